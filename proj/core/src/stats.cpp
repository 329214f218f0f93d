#include "srg/stats.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "srg/errors.hpp"
#include "srg/special_functions.hpp"

namespace srg::harness {

SummaryStat Accumulator::summary() const {
    SummaryStat s;
    s.n = n_;
    s.mean = mean_;
    if (n_ >= 2) {
        s.stddev = std::sqrt(m2_ / static_cast<double>(n_ - 1));
        s.std_error = s.stddev / std::sqrt(static_cast<double>(n_));
    }
    return s;
}

SummaryStat summarize(std::span<const double> samples) {
    Accumulator acc;
    for (const double x : samples) acc.add(x);
    return acc.summary();
}

double z_score(double mean_a, double se_a, double ref, double se_ref) {
    const double pooled = std::sqrt(se_a * se_a + se_ref * se_ref);
    if (pooled == 0.0) return mean_a == ref ? 0.0 : std::numeric_limits<double>::infinity();
    return (mean_a - ref) / pooled;
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected_probs,
                               double significance, double min_expected) {
    if (observed.size() != expected_probs.size() || observed.empty())
        throw invalid_params("chi_square_gof: size mismatch or empty input");
    std::uint64_t n_samples = 0;
    for (const auto o : observed) n_samples += o;

    // pool sparse bins so the chi-square approximation holds
    std::vector<double> exp_counts;
    std::vector<double> obs_counts;
    double pooled_exp = 0.0, pooled_obs = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = expected_probs[i] * static_cast<double>(n_samples);
        if (e < min_expected) {
            pooled_exp += e;
            pooled_obs += static_cast<double>(observed[i]);
        } else {
            exp_counts.push_back(e);
            obs_counts.push_back(static_cast<double>(observed[i]));
        }
    }
    if (pooled_exp > 0.0) {
        exp_counts.push_back(pooled_exp);
        obs_counts.push_back(pooled_obs);
    }

    ChiSquareResult r;
    if (exp_counts.size() < 2) {
        // everything in one bin: nothing to test
        r.dof = 0;
        r.pass = true;
        return r;
    }
    for (std::size_t i = 0; i < exp_counts.size(); ++i) {
        const double d = obs_counts[i] - exp_counts[i];
        r.statistic += d * d / exp_counts[i];
    }
    r.dof = static_cast<unsigned>(exp_counts.size() - 1);
    r.threshold = sf::chi_square_quantile(r.dof, 1.0 - significance);
    r.pass = r.statistic <= r.threshold;
    return r;
}

}  // namespace srg::harness
