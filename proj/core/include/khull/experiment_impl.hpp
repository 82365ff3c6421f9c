#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace khull {

template <class F>
ResultTable run_replicates(std::vector<std::string> columns, std::size_t count, std::uint64_t master,
                           std::size_t offset, unsigned threads, F&& body) {
  std::vector<std::optional<ResultRow>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const std::uint64_t seed = derive_seed(master, offset + i);
        std::optional<ResultRow> row = body(i, seed);
        if (row) {
          row->replicate = offset + i;
          row->seed = seed;
        }
        slots[i] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };

  const unsigned pool = std::max(1u, std::min<unsigned>(threads ? threads : 1u, static_cast<unsigned>(count)));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < pool; ++t) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
  }
  if (failure) std::rethrow_exception(failure);

  ResultTable table;
  table.columns = std::move(columns);
  for (auto& s : slots) {
    if (s)
      table.rows.push_back(std::move(*s));
    else
      ++table.excluded;
  }
  return table;
}

}  // namespace khull
