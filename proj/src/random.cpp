#include "simtile/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

namespace simtile {

double CounterRng::normal(std::uint64_t index, std::uint64_t lane) const {
  const double u1 = 1.0 - uniform(index, 2 * lane);  // (0, 1]
  const double u2 = uniform(index, 2 * lane + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

unsigned env_threads() {
  if (const char* s = std::getenv("SIMTILE_THREADS")) {
    const long v = std::strtol(s, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;
}

std::atomic<unsigned>& thread_setting() {
  static std::atomic<unsigned> value{env_threads()};
  return value;
}

}  // namespace

void set_thread_count(unsigned n) { thread_setting().store(n); }

unsigned thread_count() {
  const unsigned n = thread_setting().load();
  if (n != 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t chunk_count(std::size_t total, std::size_t chunk) {
  return chunk == 0 ? 0 : (total + chunk - 1) / chunk;
}

void parallel_chunks(std::size_t total, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t chunks = chunk_count(total, chunk);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), std::max<std::size_t>(chunks, 1)));
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * chunk;
    body(begin, std::min(total, begin + chunk), c);
  };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
        try {
          run_chunk(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace simtile
