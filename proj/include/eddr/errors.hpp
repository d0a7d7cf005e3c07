#pragma once

#include <stdexcept>
#include <string>

namespace eddr {

// Exit-code classes used by the CLI: 1 usage, 2 data, 3 infeasible.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plug-in quantities that make a calibration undefined (V0 <= 0, tau2 < 0, ...).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace eddr
