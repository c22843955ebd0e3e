#pragma once

#include <stdexcept>
#include <string>

namespace har {

/// Runtime failure in the pipeline (bad data, unusable model, I/O).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or schema violation. The CLI maps this to exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace har
