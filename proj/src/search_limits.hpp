#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>

namespace weakbd {

// Cooperative search deadline, checked every `check_interval` nodes.
struct SearchLimits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  long long check_interval = 1024;

  static SearchLimits with_timeout(double seconds) {
    SearchLimits l;
    if (seconds > 0)
      l.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(seconds));
    return l;
  }

  bool expired() const {
    return deadline && std::chrono::steady_clock::now() > *deadline;
  }
};

struct TimeoutError : std::runtime_error {
  long long nodes_so_far;
  explicit TimeoutError(long long nodes)
      : std::runtime_error("search deadline exceeded"), nodes_so_far(nodes) {}
};

}  // namespace weakbd
