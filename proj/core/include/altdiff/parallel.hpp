#pragma once

// Index-space parallel map handed to campaign code. The caller owns the
// worker count; results must be written to per-index slots so that output is
// independent of scheduling.

#include <cstddef>
#include <functional>

namespace altdiff {

class Executor {
 public:
  /// 0 or 1 workers runs everything on the calling thread.
  explicit Executor(unsigned workers = 1) : workers_(workers == 0 ? 1 : workers) {}

  unsigned workers() const noexcept { return workers_; }

  /// Calls fn(i) for every i in [0, count). Indices are handed out
  /// dynamically; the first exception thrown by any task is rethrown.
  void for_each(std::size_t count, const std::function<void(std::size_t)>& fn) const;

  static Executor sequential() { return Executor(1); }
  /// Hardware concurrency, overridden by ALTDIFF_THREADS when set.
  static unsigned default_workers();

 private:
  unsigned workers_;
};

}  // namespace altdiff
