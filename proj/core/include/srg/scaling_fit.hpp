#pragma once
#include <span>

namespace srg::harness {

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rss = 0.0;  // residual sum of squares
};

// Ordinary least squares y = intercept + slope * x.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

struct PowerLawFit {
    double log_amplitude = 0.0;  // a in ln y = a + b ln N [+ beta ln ln N]
    double exponent = 0.0;       // b
    double log_exponent = 0.0;   // beta, when fitted
    bool has_log_term = false;
    double rss = 0.0;            // in log space
    unsigned n_points = 0;
};

// Log-log least squares of y against N, optionally with a (ln N)^beta
// correction term. Requires >= 3 distinct N (>= 4 when beta is fitted).
PowerLawFit fit_power_law(std::span<const double> n_values, std::span<const double> y,
                          bool with_log_correction);

}  // namespace srg::harness
