#include "ringsqueeze/thread_pool.hpp"

#include <cstdlib>
#include <string>

namespace ringsqueeze {

ThreadPool::ThreadPool(unsigned workers) : n_workers_(workers == 0 ? 1 : workers) {
  if (n_workers_ > 1) {
    threads_.reserve(n_workers_);
    for (unsigned id = 0; id < n_workers_; ++id)
      threads_.emplace_back([this, id] { worker_loop(id); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
  }
  cv_start_.notify_all();
  for (auto& t : threads_) t.join();
}

void ThreadPool::worker_loop(unsigned id) {
  std::uint64_t seen = 0;
  for (;;) {
    const std::function<void(unsigned, std::size_t, std::size_t)>* job = nullptr;
    std::size_t n = 0;
    {
      std::unique_lock<std::mutex> lock(mu_);
      cv_start_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      job = job_;
      n = job_n_;
    }
    const std::size_t begin = n * id / n_workers_;
    const std::size_t end = n * (id + 1) / n_workers_;
    if (begin < end) {
      try {
        (*job)(id, begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!first_error_) first_error_ = std::current_exception();
      }
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (--remaining_ == 0) cv_done_.notify_all();
    }
  }
}

void ThreadPool::parallel_for(
    std::size_t n, const std::function<void(unsigned, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (n_workers_ == 1 || n == 1) {
    fn(0, 0, n);
    return;
  }
  {
    std::unique_lock<std::mutex> lock(mu_);
    job_ = &fn;
    job_n_ = n;
    remaining_ = n_workers_;
    ++generation_;
  }
  cv_start_.notify_all();
  std::exception_ptr err;
  {
    std::unique_lock<std::mutex> lock(mu_);
    cv_done_.wait(lock, [&] { return remaining_ == 0; });
    err = first_error_;
    first_error_ = nullptr;
  }
  if (err) std::rethrow_exception(err);
}

unsigned ThreadPool::resolve_workers(int cli_override) {
  if (cli_override > 0) return static_cast<unsigned>(cli_override);
  if (const char* env = std::getenv("RINGSQUEEZE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}
