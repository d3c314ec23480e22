#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qgb {

/// Runs body(worker, first, stride) on `jobs` workers, where worker w handles
/// items w, w + jobs, w + 2*jobs, ... of [0, n). Each worker returns a partial
/// result; partials are combined in worker order, so the result does not
/// depend on scheduling. If any worker throws, the exception of the
/// lowest-numbered failing worker is rethrown.
template <typename Result, typename Body, typename Combine>
Result strided_reduce(std::size_t n, unsigned jobs, Result init, Body body, Combine combine) {
  jobs = std::max(1u, jobs);
  const std::size_t workers = std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1));
  if (workers == 1) return combine(std::move(init), body(0, std::size_t{0}, std::size_t{1}));

  std::vector<Result> partial(workers, init);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        partial[w] = body(w, w, workers);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Result out = std::move(init);
  for (auto& p : partial) out = combine(std::move(out), std::move(p));
  return out;
}

}  // namespace qgb
