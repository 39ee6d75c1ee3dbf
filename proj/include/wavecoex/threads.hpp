#pragma once

namespace wavecoex {

// Reads WAVECOEX_THREADS and caps OpenMP worker parallelism; 0 or unset
// leaves the runtime default. Returns the applied cap (0 = auto). Throws
// ConfigError for unparsable values.
int apply_thread_cap_from_env();

}  // namespace wavecoex
