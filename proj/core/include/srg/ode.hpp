#pragma once
#include <functional>
#include <limits>
#include <vector>

#include "srg/model.hpp"

// Independent verification back-end: fixed-step RK4 on the truncated
// kinetic hierarchies. The tree hierarchy is lower-triangular in k, so
// c_k for k <= kmax carries no truncation error, only stepping error;
// truncation appears as mass leaking past the cutoff, which is audited.

namespace srg::oracle {

struct TreeOdeConfig {
    Model model = Model::Classical;
    double p = 1.0;  // Simple only
    unsigned kmax = 64;
    double dt = 1e-3;
    // order parameter s(t) for Simple runs; unset means s = 0
    std::function<double(double)> s_of_t;
    // throw truncation_error once 1 - sum k c_k exceeds this while t <= 1
    double mass_loss_bound = std::numeric_limits<double>::infinity();
    // steps between mass-balance audits (0 = off)
    unsigned audit_interval = 0;
};

struct TreeOdeResult {
    std::vector<double> c;  // c[k-1] = c_k(t_end)
    double t_end = 0.0;
    double mass = 0.0;  // sum_{k<=kmax} k c_k at t_end
    // audit: max |direct mass-loss rate - (cutoff flux + missing-tail term)|
    double max_mass_balance_residual = 0.0;
};

using TreeObserver = std::function<void(double t, const std::vector<double>& c)>;

TreeOdeResult integrate_trees(const TreeOdeConfig& cfg, double t_end);
TreeOdeResult integrate_trees(const TreeOdeConfig& cfg, double t_end, const TreeObserver& observer);

// Unicycle hierarchies: linear in U_k given tree densities c_k(t).
enum class UnicycleEquations {
    Classical,      // source + convolution + full loss term
    SimpleSub,      // p-weighted convolution and loss (subcritical)
    NoGlue,         // p = 0: pure source, valid for all t
    FullGlueSuper,  // p = 1, t >= 1: loss weighted by 1 - g(t)
};

struct UnicycleOdeConfig {
    UnicycleEquations equations = UnicycleEquations::Classical;
    double p = 1.0;  // SimpleSub only
    unsigned kmax = 32;
    double dt = 1e-3;
    std::function<double(unsigned k, double t)> c_of_kt;  // tree densities
    std::function<double(double)> g_of_t;                 // FullGlueSuper only
};

// Integrates U_k from (t_begin, u_begin) to t_end; u_begin[k-1] = U_k(t_begin).
std::vector<double> integrate_unicycles(const UnicycleOdeConfig& cfg, double t_begin,
                                        std::vector<double> u_begin, double t_end);

}  // namespace srg::oracle
