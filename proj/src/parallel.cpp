#include "gstd/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gstd {

namespace {

std::atomic<int> g_override{0};
constexpr std::size_t kChunk = 32;

}  // namespace

int thread_count() {
  const int o = g_override.load();
  if (o > 0) return o;
  if (const char* env = std::getenv("GSTDESIGN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) { g_override.store(std::max(n, 0)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const int nt = std::min<std::size_t>(thread_count(), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

Matrix parallel_matrix_sum(std::size_t n, int rows, int cols,
                           const std::function<void(std::size_t, Matrix&)>& add_item) {
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<Matrix> partial(nchunks);
  parallel_for(nchunks, [&](std::size_t k) {
    Matrix acc = Matrix::Zero(rows, cols);
    const std::size_t end = std::min(n, (k + 1) * kChunk);
    for (std::size_t i = k * kChunk; i < end; ++i) add_item(i, acc);
    partial[k] = std::move(acc);
  });
  if (partial.empty()) return Matrix::Zero(rows, cols);
  while (partial.size() > 1) {
    std::vector<Matrix> next;
    next.reserve((partial.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < partial.size(); i += 2) next.push_back(partial[i] + partial[i + 1]);
    if (partial.size() % 2) next.push_back(std::move(partial.back()));
    partial.swap(next);
  }
  return partial[0];
}

}  // namespace gstd
