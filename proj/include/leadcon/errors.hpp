#pragma once

#include <stdexcept>
#include <string>

namespace leadcon {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSymmetric : std::runtime_error {
  NotSymmetric() : std::runtime_error("instance is not symmetric") {}
  using std::runtime_error::runtime_error;
};

struct NotMonotonic : std::runtime_error {
  NotMonotonic() : std::runtime_error("instance cost functions are not monotonic") {}
  using std::runtime_error::runtime_error;
};

struct SizeGuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace leadcon
