#pragma once
#include <cstdint>
#include <span>

namespace srg::harness {

struct SummaryStat {
    std::uint64_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;     // sample stddev, n-1 normalization
    double std_error = 0.0;  // stddev / sqrt(n)
};

// Welford running mean/variance.
class Accumulator {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    SummaryStat summary() const;
    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

SummaryStat summarize(std::span<const double> samples);

// (a - ref) in pooled standard errors; se_ref = 0 for an exact reference.
double z_score(double mean_a, double se_a, double ref, double se_ref = 0.0);

struct ChiSquareResult {
    double statistic = 0.0;
    unsigned dof = 0;
    double threshold = 0.0;  // chi-square quantile at 1 - significance
    bool pass = false;
};

// Goodness of fit of observed counts against expected probabilities.
// Bins with expected count below min_expected are pooled into one.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected_probs,
                               double significance, double min_expected = 10.0);

}  // namespace srg::harness
