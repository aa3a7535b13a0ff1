#pragma once

#include "fracheat/interval_union.hpp"

#include <complex>
#include <map>
#include <vector>

namespace fracheat {

/// C_c^infinity bump: 1 on [-p, p], 0 outside (-w, w), joined by the smooth
/// step built from the standard exp(-1/t) mollifier.
struct ChiProfile {
    double w = 0.5;
    double p = 0.25;

    double operator()(double u) const;
    void validate(double xi0) const;
};

/// Parameters of the coherent-state test function
///   g_h(t,x) = ∫ chi(xi - xi0) exp(-(xi - xi0)^2/(2h) + i x xi / h - t |xi|^s h^{-s}) dxi,
/// a solution of the fractional heat equation concentrated at frequency
/// xi0/h and spatial scale sqrt(h).
struct ProbeParams {
    double s = 0.5;       // in (0,1)
    double xi0 = 1.0;
    double h = 1.0 / 64;
    ChiProfile chi;
    int quad_points = 512; // base trapezoid nodes, >= 64

    void validate() const;
    ProbeParams with_h(double new_h) const;
};

struct ProbeEval {
    std::complex<double> value;
    double err = 0;  // node-doubling error estimate
    int nodes = 0;
};

/// Evaluates g_h by the composite trapezoid rule over the support of chi
/// (the integrand vanishes to all orders at the support edges, so the rule
/// converges superalgebraically). Node counts start from quad_points, are
/// scaled with the oscillation |x|/h and the Gaussian width, and are doubled
/// until the result is certified to rel_tol or hits the cancellation floor.
class ProbeEvaluator {
public:
    explicit ProbeEvaluator(ProbeParams params);

    const ProbeParams& params() const { return params_; }
    ProbeEval eval(double t, double x, double rel_tol = 1e-10) const;

private:
    struct NodeTable {
        double step = 0;
        std::vector<double> xi;        // interior nodes
        std::vector<double> envelope;  // chi(u) * exp(-u^2 / 2h)
        std::vector<double> xi_pow_s;  // |xi|^s
    };
    const NodeTable& table(int n) const;
    std::complex<double> integrate(const NodeTable& tbl, double t, double x, double* scale) const;

    ProbeParams params_;
    mutable std::map<int, NodeTable> cache_;
};

ProbeEval eval_g(const ProbeParams& params, double t, double x, double rel_tol = 1e-10);

/// Interior closed form sqrt(2 pi h) exp(i x xi0/h - x^2/(2h) - t (xi0+ix)^s h^{-s})
/// with the explicit leading term of the h^{1-2s} exponent correction
/// (t^2 s^2 (xi0+ix)^{2s-2} h^{1-2s} / 2, the Gaussian average of the linear
/// symbol variation). Asserts Re((xi0+ix)^s) > 0.
std::complex<double> g_asymptotic(const ProbeParams& params, double t, double x);
/// Same without the correction term (the literal leading-order form).
std::complex<double> g_asymptotic_leading(const ProbeParams& params, double t, double x);

struct InteriorReport {
    std::vector<double> hs;
    std::vector<double> max_rel_err;            // against the corrected closed form
    std::vector<double> max_rel_err_leading;    // against the uncorrected form
    double fitted_order = 0;                    // slope of log err vs log h
    double order_r2 = 0;
    bool monotone_ok = false;                   // decreasing along the sweep, one inversion allowed
    double eta = 0;
};

/// Compares eval_g with the closed form on a (t, x) grid in [0,T] x [-eta, eta]
/// for each h in the sweep. Requires eta < xi0.
InteriorReport check_interior_asymptotics(const ProbeParams& base, const std::vector<double>& hs,
                                          double T, double eta);

/// Largest radius (on a coarse scan below xi0) where the interior relative
/// error stays under 10% across the whole h sweep.
double determine_eta(const ProbeParams& base, const std::vector<double>& hs, double T);

/// Certified exterior envelope |g_h(t,x)| <= C |x|^{-2} e^{-c/h} for |x| > eta,
/// 0 <= t <= T, fitted over the given h range.
struct DecayCertificate {
    double eta = 0;
    double C = 0;
    double c = 0;
    double T = 0;
    double h_min = 0, h_max = 0;
};

struct ExteriorReport {
    DecayCertificate cert;
    double fit_r2 = 0;
    bool c_positive = false;
    double prefactor_ratio_2x = 0; // bound prefactor drop when doubling |x|
};

ExteriorReport check_exterior_decay(const ProbeParams& base, const std::vector<double>& hs,
                                    double T, double eta, const std::vector<double>& xs);

struct NecessityRow {
    double h = 0;
    double L = 0;          // r * h^beta, beta = (1-s)/2
    double t_max = 0;
    double lhs = 0;        // ||g_h(T,.)||^2 over |x| <= R (tail bounded separately)
    double rhs = 0;        // ∫_0^T ||g_h(t,.)||^2_{L2(omega)} dt + exterior bound
    double ratio = 0;
    double eta = 0;
    double R = 0;
    double lhs_tail_bound = 0;
    double rhs_exterior_bound = 0;
};

/// Observability-ratio sweep on omega = R \ K, with K translated so that a
/// worst-thickness point sits at the origin. Requires a decay certificate
/// (run check_exterior_decay first); values outside |x| <= eta enter through
/// its envelope only, never through raw quadrature (which sits below the
/// double-precision cancellation floor there for small h).
std::vector<NecessityRow> necessity_experiment(const IntervalUnion& K_centered,
                                               const ProbeParams& base,
                                               const std::vector<double>& hs, double T, double r,
                                               const DecayCertificate& cert, int time_nodes = 24);

} // namespace fracheat
