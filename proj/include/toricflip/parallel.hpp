#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace toricflip {

struct ExecOptions {
  unsigned threads = 1;
};

/// Reads TORICFLIP_THREADS; unset or malformed means 1.
inline ExecOptions exec_options_from_env() {
  ExecOptions o;
  if (const char* s = std::getenv("TORICFLIP_THREADS")) {
    try {
      long v = std::stol(s);
      if (v > 0) o.threads = static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return o;
}

/// out[i] = fn(i) for i in [0, n). Results land in their own slots, so the
/// output order never depends on scheduling.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t n, Fn&& fn, ExecOptions opts = {}) {
  std::vector<R> out(n);
  unsigned workers = std::min<std::size_t>(std::max(1u, opts.threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace toricflip
