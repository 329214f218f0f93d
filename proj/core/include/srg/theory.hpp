#pragma once
#include <boost/multiprecision/cpp_int.hpp>

#include "srg/model.hpp"

// Closed-form and quadrature-based evaluation of the infinite-N predictions:
// order parameter, giant component, tree densities and their moments,
// unicycle statistics, jam-scale estimates. Pure functions, thread-safe.

namespace srg::theory {

// The boundary t = 1 counts as the subcritical limit; every evaluator is
// continuous across it.
enum class Phase { Subcritical, Supercritical };

inline Phase phase_of(double t) { return t > 1.0 ? Phase::Supercritical : Phase::Subcritical; }

// Mass fraction g of the giant component of the classical process, the root
// of g = 1 - exp(-g t); zero for t <= 1. Residual below 1e-14.
double giant_mass(double t);

// Large-time total tree density scale exp(-pt + p - gamma - psi(1 + 1/p));
// the order parameter approaches 1 minus this value. Requires p > 0.
double asymptotic_tree_density(double t, double p);

// Fraction s of vertices in unicyclic components. Zero for t <= 1; 1 - 1/t
// for p = 0; otherwise inverts the implicit relation t(s) by bisection to
// |ds| <= 1e-13, switching to the asymptotic expansion once
// asymptotic_tree_density(t, p) < 1e-12.
double order_parameter(double t, double p);

// Same, with a warm bracket [lo, hi] from a nearby solve (expanded if it
// does not actually bracket).
double order_parameter(double t, double p, double bracket_lo, double bracket_hi);

// The time at which the order parameter reaches s, for p > 0. The implicit
// relation itself; order_parameter() inverts it.
double time_at_order_parameter(double s, double p);

// Density of trees of size k. Classical and subcritical: the product-kernel
// solution; Simple supercritical: the same with t -> t(1-s) dressing.
// Evaluated in log space, safe to k = 1e6.
double tree_density(unsigned k, double t, double p, Model model);

// Dressed closed form at an externally supplied order parameter (s = 0
// gives the classical/subcritical expression).
double tree_density_at_s(unsigned k, double t, double s);

// Total density of tree components, all phases and models.
double total_tree_density(double t, double p, Model model);

// Second moment of the tree size distribution. Divergent at t = 1 exactly:
// returns +infinity as a sentinel.
double second_moment(double t, double p, Model model);

// Edges per vertex, E/N. Classical: t/2. Simple: 1 - total tree density.
double edges_per_vertex(double t, double p, Model model);

// --- classical unicycle statistics -------------------------------------

double unicycle_total_classical(double t);                          // U(t)
double unicycle_count_classical(unsigned k, double t);              // U_k(t)
double cycle_count_classical(unsigned ell, double t);               // C_ell(t)
double unicycle_joint_classical(unsigned k, unsigned ell, double t);  // U_{k,ell}(t)
double ring_count_classical(unsigned ell, double t);                // R_ell(t)

// --- SRG unicycle statistics --------------------------------------------

// Average numbers of size-1 and size-2 unicycles in the subcritical phase,
// any p >= 0. Stable through p = 1 (exact limits, no cancellation).
struct SmallUnicycleCounts {
    double u1;
    double u2;
};
SmallUnicycleCounts small_unicycles_sub(double t, double p);

// Average unicycle mass S(t) = sum k U_k for 0 <= t < 1, with the leading
// amplitudes of the first two moments near the transition. p = 2 is
// genuinely singular and rejected.
struct UnicycleMassSub {
    double mass;  // S(t)
    double a1;    // sum k U_k   ~ a1 / (1-t)^2
    double a2;    // sum k^2 U_k ~ a2 / (1-t)^4
};
UnicycleMassSub unicycle_mass_sub(double t, double p);

// Average number of size-1 unicycles for p = 1 in the supercritical phase
// (t >= 1), by dilogarithm quadrature, and its jam-time limit ~0.23898433.
double u1_supercritical_p1(double t);
double u1_jam_p1();

// Average number of size-k unicycles for p = 0, valid for all t (regularized
// incomplete gamma for t <= 1, logarithmic growth beyond).
double unicycle_count_p0(unsigned k, double t);

// --- jammed state --------------------------------------------------------

// Heuristic leading-order jam scales. For p > 0 the logarithmic laws with
// their lower/upper amplitude bounds; for p = 0 the algebraic scale
// functions. Fields that do not apply are NaN.
struct JamPrediction {
    double t_jam_lower;
    double t_jam_upper;
    double u_jam;
    double t_jam_scale;             // p = 0: ~ N
    double u_jam_scale;             // p = 0: ~ N^{1/3} (ln N)^{2/3}
    double largest_unicycle_scale;  // p = 0: ~ (N / ln N)^{2/3}
    bool heuristic = true;          // leading order only
};
JamPrediction jam_predictions(double n, double p);

// Jam-state laws of the p = 1/2 process restated from random maps:
// probability of ending with exactly one unicycle and with N unicycles.
struct RandomMapProbs {
    double prob_one_unicycle;
    double prob_all_unicycles;
};
RandomMapProbs random_map_probs(unsigned n);

// Exact rational value of prob_one_unicycle, n <= 20.
boost::multiprecision::cpp_rational random_map_prob_one_exact(unsigned n);

// One full analytic evaluation at (t, p). The unicycle count u is the
// classical finite-component average for the Classical model; for the Simple
// model it is finite only below the transition (the infinite-N count
// diverges through t = 1, reported as +inf beyond).
struct TheoryPoint {
    double t;
    double p;            // NaN for the classical model
    double s;            // order parameter (0 for classical)
    double g;            // classical giant mass
    double c_total;      // density of tree components
    double m2;           // second moment of the tree distribution
    double u;            // average number of (finite) unicycles
    double e_over_n;     // edges per vertex
    double asymptotic_c; // large-time tree density scale (NaN at p = 0/classical)
};
TheoryPoint evaluate_point(double t, double p, Model model);

// --- classical giant component -------------------------------------------

// Edge/vertex ratio of the giant and its (extensive, negative) Euler
// characteristic at size n. Requires t > 1.
struct GiantProperties {
    double edge_ratio;
    double chi;
};
GiantProperties giant_properties(double t, double n);

// Independent series route for chi/N, summed to m <= mmax.
double giant_chi_per_vertex_series(double g, int mmax);

}  // namespace srg::theory
