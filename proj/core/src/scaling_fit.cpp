#include "srg/scaling_fit.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "srg/errors.hpp"

namespace srg::harness {

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw invalid_params("fit_linear: need >= 2 matching points");
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw invalid_params("fit_linear: degenerate x values");
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        f.rss += r * r;
    }
    return f;
}

namespace {

// solve the 3x3 normal equations by Gaussian elimination with pivoting
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        if (m[col][col] == 0.0) throw invalid_params("fit_power_law: singular normal equations");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace

PowerLawFit fit_power_law(std::span<const double> n_values, std::span<const double> y,
                          bool with_log_correction) {
    if (n_values.size() != y.size()) throw invalid_params("fit_power_law: size mismatch");
    const std::size_t min_pts = with_log_correction ? 4 : 3;
    if (n_values.size() < min_pts)
        throw invalid_params("fit_power_law: too few points for the requested fit");
    std::vector<double> lx(n_values.size()), ly(n_values.size()), llx(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (!(n_values[i] > 1.0) || !(y[i] > 0.0))
            throw invalid_params("fit_power_law: requires N > 1 and y > 0");
        lx[i] = std::log(n_values[i]);
        ly[i] = std::log(y[i]);
        llx[i] = std::log(lx[i]);
    }

    PowerLawFit f;
    f.n_points = static_cast<unsigned>(n_values.size());
    f.has_log_term = with_log_correction;
    if (!with_log_correction) {
        const LinearFit lin = fit_linear(lx, ly);
        f.log_amplitude = lin.intercept;
        f.exponent = lin.slope;
        f.rss = lin.rss;
        return f;
    }

    std::array<std::array<double, 4>, 3> m{};
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const std::array<double, 3> row{1.0, lx[i], llx[i]};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
            m[r][3] += row[r] * ly[i];
        }
    }
    const auto sol = solve3(m);
    f.log_amplitude = sol[0];
    f.exponent = sol[1];
    f.log_exponent = sol[2];
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - sol[0] - sol[1] * lx[i] - sol[2] * llx[i];
        f.rss += r * r;
    }
    return f;
}

}  // namespace srg::harness
