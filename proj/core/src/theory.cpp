#include "srg/theory.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "srg/errors.hpp"
#include "srg/quadrature.hpp"
#include "srg/special_functions.hpp"

namespace srg::theory {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ln(1 - e^{-w}) without cancellation.
double log1mexp(double w) {
    if (w <= 0.0) return -kInf;
    if (w < 0.6931471805599453) return std::log(-std::expm1(-w));
    return std::log1p(-std::exp(-w));
}

}  // namespace

double giant_mass(double t) {
    if (!(t >= 0.0)) throw invalid_params("giant_mass: requires t >= 0");
    if (t <= 1.0) return 0.0;
    // expm1 keeps the residual sign right for tiny g, where exp(-gt)
    // rounds to 1 and g - 1 + exp(-gt) would come out positive
    auto f = [t](double g) { return g + std::expm1(-g * t); };
    double lo = 1e-300, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double g = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        g -= f(g) / (1.0 - t * std::exp(-g * t));
    }
    return g;
}

double asymptotic_tree_density(double t, double p) {
    if (!(p > 0.0)) throw invalid_params("asymptotic_tree_density: requires p > 0");
    return std::exp(-p * t + p - sf::euler_gamma - sf::digamma(1.0 + 1.0 / p));
}

double time_at_order_parameter(double s, double p) {
    if (!(p > 0.0)) throw invalid_params("time_at_order_parameter: requires p > 0");
    if (!(s > 0.0 && s < 1.0)) throw invalid_params("time_at_order_parameter: requires s in (0,1)");
    // t = 1 + I / (p s^{1/p}) with I = int_0^s z^{1/p}/(1-z) dz, normalized
    // by s^{1/p} so every evaluation stays in [0,1]. Two pieces:
    //  - z in [0, s/2]: geometric series (z^{1/p} has an unbounded
    //    derivative at 0 whenever p > 1, which starves bisection);
    //  - z in [s/2, s]: substituting 1-z = e^{-w} flattens the
    //    log-divergent z -> 1 endpoint; integrate in w.
    const double log_s = std::log(s);
    const double inv_p = 1.0 / p;
    const double z0 = 0.5 * s;

    double series = 0.0;
    {
        double zpow = std::exp(inv_p * (std::log(z0) - log_s)) * z0;  // (z0/s)^{1/p} z0
        for (int n = 0; n < 200; ++n) {
            const double term = zpow / (n + 1.0 + inv_p);
            series += term;
            zpow *= z0;
            if (term < 1e-17 * series) break;
        }
    }

    const double w0 = -std::log1p(-z0);
    const double w_max = -std::log1p(-s);
    auto integrand = [&](double w) {
        const double e = inv_p * (log1mexp(w) - log_s);
        return e < -745.0 ? 0.0 : std::exp(e);
    };
    const double r = series + integrate(integrand, w0, w_max, 5e-14 * std::max(p, 1e-6));
    return 1.0 + r / p;
}

namespace {

double order_parameter_bisect(double t, double p, double lo, double hi) {
    auto time_err = [&](double s) { return time_at_order_parameter(s, p) - t; };
    if (!(time_err(lo) < 0.0 && time_err(hi) > 0.0)) {
        lo = 1e-13;
        hi = 1.0 - 1e-13;
        if (time_err(hi) < 0.0) {
            // beyond the bracketable range; exponentially close to 1
            const double e = asymptotic_tree_density(t, p);
            return 1.0 - e - (t - 1.0) * e * e;
        }
        if (time_err(lo) > 0.0) throw numerical_error("order_parameter: cannot bracket");
    }
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        (time_err(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double order_parameter(double t, double p, double bracket_lo, double bracket_hi) {
    if (!(t >= 0.0) || !(p >= 0.0)) throw invalid_params("order_parameter: requires t >= 0, p >= 0");
    if (t <= 1.0) return 0.0;
    if (p == 0.0) return 1.0 - 1.0 / t;
    const double small_t = t - 1.0;
    if (small_t <= 1e-10)
        return (1.0 + p) * small_t * (1.0 - (1.0 + p) * (1.0 + p) / (1.0 + 2.0 * p) * small_t);
    const double e = asymptotic_tree_density(t, p);
    if (e < 1e-12) return 1.0 - e - small_t * e * e;
    const double lo = std::min(std::max(bracket_lo, 1e-13), 1.0 - 2e-13);
    const double hi = std::min(std::max(bracket_hi, lo + 1e-13), 1.0 - 1e-13);
    return order_parameter_bisect(t, p, lo, hi);
}

double order_parameter(double t, double p) {
    return order_parameter(t, p, 1e-13, 1.0 - 1e-13);
}

double tree_density_at_s(unsigned k, double t, double s) {
    if (k == 0) throw invalid_params("tree_density_at_s: requires k >= 1");
    const double dk = static_cast<double>(k);
    const double x = t * (1.0 - s);
    double lg = (dk - 2.0) * std::log(dk) - sf::log_gamma(dk + 1.0) - dk * x;
    if (k > 1) lg += (dk - 1.0) * std::log(t);
    if (s > 0.0) lg += dk * std::log1p(-s);
    return std::exp(lg);
}

double tree_density(unsigned k, double t, double p, Model model) {
    if (!(t >= 0.0)) throw invalid_params("tree_density: requires t >= 0");
    if (model == Model::Classical || t <= 1.0) return tree_density_at_s(k, t, 0.0);
    return tree_density_at_s(k, t, order_parameter(t, p));
}

double total_tree_density(double t, double p, Model model) {
    if (!(t >= 0.0)) throw invalid_params("total_tree_density: requires t >= 0");
    if (t <= 1.0) return 1.0 - 0.5 * t;
    if (model == Model::Classical) {
        const double g = giant_mass(t);
        return 1.0 - 0.5 * t - g - (1.0 - 0.5 * g) * std::log1p(-g);
    }
    const double s = order_parameter(t, p);
    return 1.0 - 0.5 * (1.0 + s * s) * t + (t - 1.0) * s;
}

double second_moment(double t, double p, Model model) {
    if (!(t >= 0.0)) throw invalid_params("second_moment: requires t >= 0");
    if (t == 1.0) return kInf;
    if (t < 1.0) return 1.0 / (1.0 - t);
    const double m = model == Model::Classical ? giant_mass(t) : order_parameter(t, p);
    return (1.0 - m) / (1.0 - t * (1.0 - m));
}

double edges_per_vertex(double t, double p, Model model) {
    if (model == Model::Classical) return 0.5 * t;
    return 1.0 - total_tree_density(t, p, model);
}

double unicycle_total_classical(double t) {
    if (!(t >= 0.0)) throw invalid_params("unicycle_total_classical: requires t >= 0");
    if (t == 1.0) return kInf;
    if (t < 1.0) return -0.5 * std::log1p(-t);
    return -0.5 * std::log1p(-(1.0 - giant_mass(t)) * t);
}

double unicycle_count_classical(unsigned k, double t) {
    if (k == 0) throw invalid_params("unicycle_count_classical: requires k >= 1");
    if (t == 0.0) return 0.0;
    const double dk = static_cast<double>(k);
    const double log_k = std::log(dk);
    std::vector<double> terms(k);
    for (unsigned n = 0; n < k; ++n)
        terms[n] = (static_cast<double>(n) - 1.0) * log_k - sf::log_gamma(n + 1.0);
    return std::exp(std::log(0.5) + dk * std::log(t) - dk * t + sf::log_sum_exp(terms));
}

double cycle_count_classical(unsigned ell, double t) {
    if (ell == 0) throw invalid_params("cycle_count_classical: requires ell >= 1");
    if (t == 0.0) return 0.0;
    const double dl = static_cast<double>(ell);
    return std::exp(dl * std::log(t) - std::log(2.0 * dl));
}

double unicycle_joint_classical(unsigned k, unsigned ell, double t) {
    if (ell == 0 || ell > k) throw invalid_params("unicycle_joint_classical: requires 1 <= ell <= k");
    if (t == 0.0) return 0.0;
    const double dk = static_cast<double>(k);
    const double m = static_cast<double>(k - ell);
    return std::exp(std::log(0.5) + (m - 1.0) * std::log(dk) - sf::log_gamma(m + 1.0) +
                    dk * std::log(t) - dk * t);
}

double ring_count_classical(unsigned ell, double t) {
    if (ell == 0) throw invalid_params("ring_count_classical: requires ell >= 1");
    if (t == 0.0) return 0.0;
    const double dl = static_cast<double>(ell);
    return std::exp(dl * std::log(t) - dl * t - std::log(2.0 * dl));
}

SmallUnicycleCounts small_unicycles_sub(double t, double p) {
    if (!(t >= 0.0) || !(p >= 0.0))
        throw invalid_params("small_unicycles_sub: requires t >= 0, p >= 0");
    const double eps = 1.0 - p;  // q
    const double emt = std::exp(-t);
    SmallUnicycleCounts out{};

    if (std::abs(eps) < 1e-15) {
        out.u1 = 0.5 * t * emt * (1.0 + 0.5 * eps * t);
        out.u2 = 0.75 * t * t * emt * emt;
        return out;
    }
    out.u1 = emt * std::expm1(eps * t) / (2.0 * eps);

    const double et = eps * t;
    if (std::abs(et) < 0.5) {
        // grouped form: every term is O(eps^2), no cancellation between them
        const double u = std::expm1(et);
        double s2 = 0.0;  // expm1(et) - et = sum_{n>=2} (et)^n / n!
        double term = et;
        for (int n = 2; n < 40; ++n) {
            term *= et / n;
            s2 += term;
            if (std::abs(term) < 1e-18 * std::abs(s2) + 1e-300) break;
        }
        const double f = 4.0 * s2 + (4.0 - 2.0 * eps) * u * u;
        out.u2 = emt * emt * f / (8.0 * eps * eps);
    } else {
        out.u2 = ((2.0 + 2.0 * p) * std::exp(-2.0 * p * t) - 4.0 * p * std::exp(-(1.0 + p) * t) -
                  (2.0 - 2.0 * p + 4.0 * eps * t) * emt * emt) /
                 (8.0 * eps * eps);
    }
    return out;
}

UnicycleMassSub unicycle_mass_sub(double t, double p) {
    if (!(t >= 0.0 && t < 1.0)) throw invalid_params("unicycle_mass_sub: requires 0 <= t < 1");
    if (p == 2.0) throw invalid_params("unicycle_mass_sub: amplitudes singular at p = 2");
    UnicycleMassSub out{};
    const double om = 1.0 - t;
    out.mass = (std::pow(om, -2.0) - std::pow(om, -p)) / (2.0 * (2.0 - p));
    out.a1 = 1.0 / (2.0 * (2.0 - p));
    out.a2 = p / (4.0 * (2.0 - p) * (2.0 - p)) + 3.0 / (4.0 * (2.0 - p));
    return out;
}

namespace {

// H(h) = 1/h + (1-h) ln(1-h) / h^2 = sum_{m>=0} h^m / ((m+1)(m+2))
double u1_kernel(double h) {
    if (h >= 1.0) return 1.0;
    if (h < 1e-4) {
        double sum = 0.0, hm = 1.0;
        for (int m = 0; m < 8; ++m) {
            sum += hm / ((m + 1.0) * (m + 2.0));
            hm *= h;
        }
        return sum;
    }
    return 1.0 / h + (1.0 - h) * std::log1p(-h) / (h * h);
}

double u1_kernel_integral(double g_upper) {
    if (g_upper <= 0.0) return 0.0;
    return integrate([](double h) { return u1_kernel(h) * std::exp(sf::dilog(h)); }, 0.0,
                     g_upper, 1e-10);
}

}  // namespace

double u1_supercritical_p1(double t) {
    if (!(t >= 1.0)) throw invalid_params("u1_supercritical_p1: requires t >= 1");
    const double g = giant_mass(t);
    return 0.5 * (1.0 + u1_kernel_integral(g)) * std::exp(-t * (1.0 - g) - sf::dilog(g));
}

double u1_jam_p1() {
    return 0.5 * (1.0 + u1_kernel_integral(1.0)) * std::exp(-sf::pi * sf::pi / 6.0);
}

double unicycle_count_p0(unsigned k, double t) {
    if (k == 0) throw invalid_params("unicycle_count_p0: requires k >= 1");
    if (!(t >= 0.0)) throw invalid_params("unicycle_count_p0: requires t >= 0");
    const double dk = static_cast<double>(k);
    auto at_time = [dk](double tt) {
        return tt == 0.0 ? 0.0 : sf::reg_lower_gamma(dk, dk * tt) / (2.0 * dk);
    };
    if (t <= 1.0) return at_time(t);
    const double growth = std::exp(dk * std::log(dk) - dk - sf::log_gamma(dk + 1.0));
    return at_time(1.0) + 0.5 * growth * std::log(t);
}

JamPrediction jam_predictions(double n, double p) {
    if (!(n >= 2.0) || !(p >= 0.0)) throw invalid_params("jam_predictions: requires N >= 2, p >= 0");
    JamPrediction out{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, true};
    const double ln_n = std::log(n);
    if (p > 0.0) {
        out.t_jam_lower = ln_n / (2.0 * p);
        out.t_jam_upper = ln_n / p;
        out.u_jam = (1.0 + p) / (6.0 * p) * ln_n;
    } else {
        out.t_jam_scale = n;
        out.u_jam_scale = std::cbrt(n) * std::pow(ln_n, 2.0 / 3.0);
        out.largest_unicycle_scale = std::pow(n / ln_n, 2.0 / 3.0);
    }
    return out;
}

boost::multiprecision::cpp_rational random_map_prob_one_exact(unsigned n) {
    if (n == 0 || n > 20) throw invalid_params("random_map_prob_one_exact: requires 1 <= n <= 20");
    using boost::multiprecision::cpp_int;
    cpp_int numer = 0;
    // (n-1)!/m! * n^m summed over m < n; every term is an integer
    for (unsigned m = 0; m < n; ++m) {
        cpp_int term = 1;
        for (unsigned j = m + 1; j < n; ++j) term *= j;
        for (unsigned j = 0; j < m; ++j) term *= n;
        numer += term;
    }
    cpp_int denom = 1;
    for (unsigned j = 0; j < n; ++j) denom *= n;
    return {numer, denom};
}

RandomMapProbs random_map_probs(unsigned n) {
    if (n == 0) throw invalid_params("random_map_probs: requires N >= 1");
    RandomMapProbs out{};
    const double dn = static_cast<double>(n);
    if (n <= 20) {
        out.prob_one_unicycle =
            static_cast<double>(random_map_prob_one_exact(n));
    } else {
        std::vector<double> terms(n);
        const double log_n = std::log(dn);
        for (unsigned m = 0; m < n; ++m)
            terms[m] = static_cast<double>(m) * log_n - sf::log_gamma(m + 1.0);
        out.prob_one_unicycle =
            std::exp(sf::log_gamma(dn) - dn * log_n + sf::log_sum_exp(terms));
    }
    out.prob_all_unicycles = std::exp(-dn * std::log(dn));
    return out;
}

TheoryPoint evaluate_point(double t, double p, Model model) {
    TheoryPoint pt{};
    pt.t = t;
    pt.p = model == Model::Simple ? p : kNaN;
    pt.g = giant_mass(t);
    pt.s = model == Model::Simple ? order_parameter(t, p) : 0.0;
    pt.c_total = total_tree_density(t, p, model);
    pt.m2 = second_moment(t, p, model);
    if (model == Model::Classical) {
        pt.u = unicycle_total_classical(t);
    } else {
        pt.u = t < 1.0 ? -0.5 * std::log1p(-t) : kInf;
    }
    pt.e_over_n = edges_per_vertex(t, p, model);
    pt.asymptotic_c =
        model == Model::Simple && p > 0.0 ? asymptotic_tree_density(t, p) : kNaN;
    return pt;
}

GiantProperties giant_properties(double t, double n) {
    if (!(t > 1.0)) throw invalid_params("giant_properties: requires t > 1");
    const double g = giant_mass(t);
    GiantProperties out{};
    out.edge_ratio = -(2.0 - g) / (2.0 * g) * std::log1p(-g);
    out.chi = n * (g + 0.5 * (2.0 - g) * std::log1p(-g));
    return out;
}

double giant_chi_per_vertex_series(double g, int mmax) {
    double sum = 0.0;
    double gm = g * g * g;
    for (int m = 3; m <= mmax; ++m) {
        sum += (m - 2.0) / (2.0 * m * (m - 1.0)) * gm;
        gm *= g;
    }
    return -sum;
}

}  // namespace srg::theory
