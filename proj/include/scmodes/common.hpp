#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace scmodes {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Error taxonomy. The CLI maps validation_error -> exit 2, the numerical
// family -> exit 3, and I/O problems -> exit 4.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct validation_error : error {
    using error::error;
};

struct numerical_error : error {
    using error::error;
};

struct blowup_error : numerical_error {
    double pole_time;
    blowup_error(const std::string& msg, double t)
        : numerical_error(msg), pole_time(t) {}
};

struct caustic_error : numerical_error {
    using numerical_error::numerical_error;
};

struct pole_proximity_error : numerical_error {
    double distance;
    pole_proximity_error(const std::string& msg, double d)
        : numerical_error(msg), distance(d) {}
};

struct convergence_error : numerical_error {
    using numerical_error::numerical_error;
};

// Warning channel: callers that care pass a sink, everyone else passes null.
using warning_list = std::vector<std::string>;

inline void warn(warning_list* sink, std::string msg) {
    if (sink) sink->push_back(std::move(msg));
}

inline double sq(double x) { return x * x; }

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace scmodes
