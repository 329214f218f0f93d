#include "srg/ode.hpp"

#include <cmath>

#include "srg/errors.hpp"

namespace srg::oracle {

namespace {

// dc_k/dt = 1/2 sum_{i+j=k} ij c_i c_j - k c_k (1 - q s)
void tree_rhs(const TreeOdeConfig& cfg, double t, const std::vector<double>& c,
              std::vector<double>& dc, std::vector<double>& w) {
    const unsigned kmax = cfg.kmax;
    const double q = cfg.model == Model::Simple ? 1.0 - cfg.p : 0.0;
    const double s = cfg.s_of_t && cfg.model == Model::Simple ? cfg.s_of_t(t) : 0.0;
    const double decay = 1.0 - q * s;
    for (unsigned k = 1; k <= kmax; ++k) w[k] = k * c[k - 1];
    for (unsigned k = 1; k <= kmax; ++k) {
        double conv = 0.0;
        for (unsigned i = 1; i < k; ++i) conv += w[i] * w[k - i];
        dc[k - 1] = 0.5 * conv - static_cast<double>(k) * c[k - 1] * decay;
    }
}

double first_moment(const std::vector<double>& c) {
    double m = 0.0;
    for (std::size_t k = c.size(); k > 0; --k) m += static_cast<double>(k) * c[k - 1];
    return m;
}

// Mass leaves the truncated window two ways: merge products past the cutoff
// and the loss term acting against the (untracked) missing tail. Both are
// truncation artifacts; the audit checks they account for the entire
// first-moment drift.
double decomposed_loss_rate(const TreeOdeConfig& cfg, double t, const std::vector<double>& c) {
    const unsigned kmax = cfg.kmax;
    const double q = cfg.model == Model::Simple ? 1.0 - cfg.p : 0.0;
    const double s = cfg.s_of_t && cfg.model == Model::Simple ? cfg.s_of_t(t) : 0.0;
    double m1 = 0.0, m2 = 0.0;
    for (unsigned k = 1; k <= kmax; ++k) {
        m1 += k * c[k - 1];
        m2 += static_cast<double>(k) * k * c[k - 1];
    }
    double flux = 0.0;
    for (unsigned i = 1; i <= kmax; ++i) {
        const double wi = i * c[i - 1];
        for (unsigned j = kmax + 1 - i; j <= kmax; ++j)
            flux += wi * j * c[j - 1] * (i + j);
    }
    return m2 * (1.0 - q * s - m1) + 0.5 * flux;
}

}  // namespace

TreeOdeResult integrate_trees(const TreeOdeConfig& cfg, double t_end) {
    return integrate_trees(cfg, t_end, TreeObserver{});
}

TreeOdeResult integrate_trees(const TreeOdeConfig& cfg, double t_end, const TreeObserver& observer) {
    if (cfg.kmax < 2) throw invalid_params("integrate_trees: kmax must be >= 2");
    if (!(cfg.dt > 0.0) || cfg.dt > 1e-3 + 1e-15)
        throw invalid_params("integrate_trees: requires 0 < dt <= 1e-3");
    if (!(t_end >= 0.0)) throw invalid_params("integrate_trees: t_end must be >= 0");

    const unsigned kmax = cfg.kmax;
    std::vector<double> c(kmax, 0.0);
    c[0] = 1.0;  // monomers only
    std::vector<double> k1(kmax), k2(kmax), k3(kmax), k4(kmax), tmp(kmax), w(kmax + 1);

    TreeOdeResult out;
    const auto n_steps = static_cast<std::uint64_t>(std::ceil(t_end / cfg.dt - 1e-12));
    double t = 0.0;
    for (std::uint64_t step = 0; step < n_steps; ++step) {
        t = static_cast<double>(step) * cfg.dt;
        const double h = std::min(cfg.dt, t_end - t);

        tree_rhs(cfg, t, c, k1, w);
        if (cfg.audit_interval != 0 && step % cfg.audit_interval == 0) {
            double direct = 0.0;
            for (unsigned k = 1; k <= kmax; ++k) direct -= k * k1[k - 1];
            out.max_mass_balance_residual = std::max(
                out.max_mass_balance_residual, std::abs(direct - decomposed_loss_rate(cfg, t, c)));
        }
        for (unsigned i = 0; i < kmax; ++i) tmp[i] = c[i] + 0.5 * h * k1[i];
        tree_rhs(cfg, t + 0.5 * h, tmp, k2, w);
        for (unsigned i = 0; i < kmax; ++i) tmp[i] = c[i] + 0.5 * h * k2[i];
        tree_rhs(cfg, t + 0.5 * h, tmp, k3, w);
        for (unsigned i = 0; i < kmax; ++i) tmp[i] = c[i] + h * k3[i];
        tree_rhs(cfg, t + h, tmp, k4, w);
        for (unsigned i = 0; i < kmax; ++i)
            c[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += h;

        if (t <= 1.0 && 1.0 - first_moment(c) > cfg.mass_loss_bound)
            throw truncation_error("integrate_trees: mass loss past cutoff exceeded bound");
        if (observer) observer(t, c);
    }
    out.c = std::move(c);
    out.t_end = t_end;
    out.mass = first_moment(out.c);
    return out;
}

namespace {

void unicycle_rhs(const UnicycleOdeConfig& cfg, double t, const std::vector<double>& u,
                  std::vector<double>& du, std::vector<double>& cvec) {
    const unsigned kmax = cfg.kmax;
    for (unsigned k = 1; k <= kmax; ++k) cvec[k - 1] = cfg.c_of_kt(k, t);
    switch (cfg.equations) {
        case UnicycleEquations::NoGlue:
            for (unsigned k = 1; k <= kmax; ++k)
                du[k - 1] = 0.5 * static_cast<double>(k) * k * cvec[k - 1];
            return;
        case UnicycleEquations::Classical:
        case UnicycleEquations::SimpleSub:
        case UnicycleEquations::FullGlueSuper:
            break;
    }
    const double weight = cfg.equations == UnicycleEquations::SimpleSub ? cfg.p : 1.0;
    double loss = 1.0;
    if (cfg.equations == UnicycleEquations::SimpleSub) loss = cfg.p;
    if (cfg.equations == UnicycleEquations::FullGlueSuper) loss = 1.0 - cfg.g_of_t(t);
    for (unsigned k = 1; k <= kmax; ++k) {
        double conv = 0.0;
        for (unsigned i = 1; i < k; ++i)
            conv += static_cast<double>(i) * u[i - 1] * static_cast<double>(k - i) * cvec[k - i - 1];
        du[k - 1] = 0.5 * static_cast<double>(k) * k * cvec[k - 1] + weight * conv -
                    static_cast<double>(k) * u[k - 1] * loss;
    }
}

}  // namespace

std::vector<double> integrate_unicycles(const UnicycleOdeConfig& cfg, double t_begin,
                                        std::vector<double> u_begin, double t_end) {
    if (cfg.kmax < 1) throw invalid_params("integrate_unicycles: kmax must be >= 1");
    if (!(cfg.dt > 0.0) || cfg.dt > 1e-3 + 1e-15)
        throw invalid_params("integrate_unicycles: requires 0 < dt <= 1e-3");
    if (!(t_end >= t_begin)) throw invalid_params("integrate_unicycles: t_end must be >= t_begin");
    if (!cfg.c_of_kt) throw invalid_params("integrate_unicycles: c_of_kt is required");
    if (cfg.equations == UnicycleEquations::FullGlueSuper && !cfg.g_of_t)
        throw invalid_params("integrate_unicycles: g_of_t is required for FullGlueSuper");
    if (u_begin.size() != cfg.kmax)
        throw invalid_params("integrate_unicycles: u_begin size must equal kmax");

    const unsigned kmax = cfg.kmax;
    std::vector<double> u = std::move(u_begin);
    std::vector<double> k1(kmax), k2(kmax), k3(kmax), k4(kmax), tmp(kmax), cvec(kmax);
    const auto n_steps = static_cast<std::uint64_t>(std::ceil((t_end - t_begin) / cfg.dt - 1e-12));
    for (std::uint64_t step = 0; step < n_steps; ++step) {
        const double t = t_begin + static_cast<double>(step) * cfg.dt;
        const double h = std::min(cfg.dt, t_end - t);
        unicycle_rhs(cfg, t, u, k1, cvec);
        for (unsigned i = 0; i < kmax; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
        unicycle_rhs(cfg, t + 0.5 * h, tmp, k2, cvec);
        for (unsigned i = 0; i < kmax; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
        unicycle_rhs(cfg, t + 0.5 * h, tmp, k3, cvec);
        for (unsigned i = 0; i < kmax; ++i) tmp[i] = u[i] + h * k3[i];
        unicycle_rhs(cfg, t + h, tmp, k4, cvec);
        for (unsigned i = 0; i < kmax; ++i)
            u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return u;
}

}  // namespace srg::oracle
