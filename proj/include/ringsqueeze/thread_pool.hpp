#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ringsqueeze {

/// Persistent workers running contiguous index chunks. Results must never
/// depend on the worker count: callers write per-index outputs and reduce
/// serially afterwards. workers() == 1 executes inline on the caller.
class ThreadPool {
 public:
  explicit ThreadPool(unsigned workers);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  unsigned workers() const { return n_workers_; }

  /// fn(worker_id, begin, end) over a fixed partition of [0, n).
  void parallel_for(std::size_t n,
                    const std::function<void(unsigned, std::size_t, std::size_t)>& fn);

  /// Worker count from CLI override, RINGSQUEEZE_THREADS, then hardware.
  static unsigned resolve_workers(int cli_override);

 private:
  void worker_loop(unsigned id);

  unsigned n_workers_;
  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
  std::uint64_t generation_ = 0;
  unsigned remaining_ = 0;
  bool stop_ = false;
  std::size_t job_n_ = 0;
  const std::function<void(unsigned, std::size_t, std::size_t)>* job_ = nullptr;
  std::exception_ptr first_error_;
};

}
