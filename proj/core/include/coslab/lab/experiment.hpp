#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "coslab/serialize.hpp"

namespace coslab::lab {

struct Instance {
  std::string group;
  std::optional<std::string> set;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> index;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct ExperimentRecord {
  std::string suite;
  Instance instance;
  Json outputs = Json::object();
  std::optional<double> timing_ms;
  std::optional<bool> pass;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

Json record_to_json(const ExperimentRecord& r);
ExperimentRecord record_from_json(const Json& j);

enum class OutputFormat { kJsonl, kCsv };
OutputFormat parse_format(std::string_view name);

// kScan: one column per scan quantity. kVerify: outputs as a JSON cell.
enum class CsvLayout { kScan, kVerify };

std::string csv_header(CsvLayout layout);
std::string to_csv_row(const ExperimentRecord& r, CsvLayout layout);
ExperimentRecord record_from_csv_row(std::string_view row, CsvLayout layout);

// CSV output starts with the header even when no record follows.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, OutputFormat format, CsvLayout layout);
  void write(const ExperimentRecord& r);

 private:
  std::ostream& out_;
  OutputFormat format_;
  CsvLayout layout_;
};

std::vector<ExperimentRecord> read_records(std::istream& in, OutputFormat format, CsvLayout layout);

// body(i) for every i in [0, n) on `jobs` threads; results keep index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, int jobs, const std::function<T(std::size_t)>& body) {
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(body(i));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace coslab::lab
