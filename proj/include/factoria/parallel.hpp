#pragma once

namespace factoria {

// Upper bound on OpenMP threads used by the parallel kernels.
// Initialized from FACTORIA_THREADS when first queried; 0 or unset means
// the OpenMP default.
int thread_cap();
void set_thread_cap(int n);

}  // namespace factoria
