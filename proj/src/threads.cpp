#include "wavecoex/threads.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wavecoex/types.hpp"

namespace wavecoex {

int apply_thread_cap_from_env() {
    const char* raw = std::getenv("WAVECOEX_THREADS");
    if (raw == nullptr || raw[0] == '\0') return 0;

    const std::string value(raw);
    int cap = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), cap);
    if (ec != std::errc{} || ptr != value.data() + value.size() || cap < 0) {
        throw ConfigError("WAVECOEX_THREADS must be a nonnegative integer (0 = auto), got '" +
                          value + "'");
    }
    if (cap > 0) {
#ifdef _OPENMP
        omp_set_num_threads(cap);
#endif
    }
    return cap;
}

}  // namespace wavecoex
