#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nashoverlap/stats.hpp"

namespace nashoverlap {

/// Line-oriented key=value run record, written in insertion order.
/// Keys prefixed "perf_" hold wall-clock/thread facts that never affect
/// outputs; reproducibility comparisons strip them.
class RunManifest {
 public:
  void add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, std::uint64_t value) {
    add(std::move(key), std::to_string(value));
  }
  void add(std::string key, std::int64_t value) {
    add(std::move(key), std::to_string(value));
  }
  void add(std::string key, std::uint32_t value) {
    add(std::move(key), std::to_string(value));
  }
  void add(std::string key, double value) {
    add(std::move(key), format_double(value));
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  void write(std::ostream& out) const {
    for (const auto& [key, value] : entries_)
      out << key << '=' << value << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace nashoverlap
