#pragma once

namespace har {

/// Execution policy for the data-parallel kernels. Parallel uses OpenMP when
/// the build has it; results are identical to Serial either way (each item is
/// computed independently with a fixed arithmetic order).
enum class Exec { Serial, Parallel };

/// Hard thread cap for OpenMP regions; 0 keeps the runtime default.
void set_thread_count(int n);

int max_threads();

}  // namespace har
