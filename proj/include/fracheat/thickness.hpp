#pragma once

#include "fracheat/interval_union.hpp"
#include "fracheat/svc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracheat {

struct LocalMeasure {
    Rational theta;     // inf_x Leb(omega ∩ B(x,L)) / Leb(B(x,L)), omega = R \ K
    Rational argmin_x;  // smallest minimizing window center among the candidates
};

/// Exact infimum over x of the relative measure of omega = R \ K in B(x, L).
/// The map x -> Leb(K ∩ [x-L, x+L]) is piecewise linear with breakpoints at
/// endpoint ± L, so the infimum is attained on that finite candidate set
/// (hull edges included); all candidates are evaluated exactly.
LocalMeasure min_local_measure(const IntervalUnion& K, const Rational& L);

struct ThicknessSample {
    Rational L;
    Rational theta;
    Rational argmin_x;
    // filled by verify_svc_bounds
    std::optional<double> lower_bound;
    std::optional<double> upper_bound;
};

struct ThicknessProfile {
    std::vector<ThicknessSample> samples; // sorted by L
};

ThicknessProfile thickness_profile(const IntervalUnion& K, std::vector<Rational> Ls);

/// Same profile on a deep SVC set, computed hierarchically (exact, no
/// materialization of the 2^depth intervals).
ThicknessProfile svc_thickness_profile(const SvcParams& params, unsigned depth,
                                       std::vector<Rational> Ls);

struct SvcBoundsRow {
    double L = 0;
    double lower_tail = 0;  // sum_{k >= ceil(log2(kappa*c0/L))} r_k
    double theta = 0;
    double upper_tail = 0;  // sum_{k >= ceil(log2(c0/(4L)))} r_k
    bool pass = false;
};

struct SvcBoundsReport {
    std::vector<SvcBoundsRow> rows;
    double c0 = 0;               // prod_{k<depth} (1 - r_k)
    double tail_beyond_depth = 0; // truncation bound sum_{k>=depth} r_k
    double c_fit = 0;            // largest c with c*lower_tail <= theta on all rows
    double C_fit = 0;            // smallest C with theta <= C*upper_tail on all rows
    double L0 = 0;               // largest sampled L with ceil(log2(kappa*c0/L)) >= 1
    double kappa = 3.0;
    bool pass = false;
    ThicknessProfile profile;    // exact samples with bound columns filled
};

/// Checks the two-sided tail-sum envelope on the thickness of the SVC
/// complement. Requires a summable ratio sequence (partial sums must
/// stagnate to machine tolerance) and depth fine enough that
/// l_depth < min(L)/16.
SvcBoundsReport verify_svc_bounds(const SvcParams& params, unsigned depth,
                                  std::vector<Rational> Ls, double kappa = 3.0);

struct AlphaFit {
    double alpha_hat = 0;
    double c_hat = 0;
    double C_hat = 0;
    double r2 = 0;
};

/// Fits theta(L) ~ c * exp(-C * L^-alpha) on the linearization
/// log(-log(theta/c)) = log C - alpha log L, optimizing c by golden section.
/// Needs >= 8 samples with 0 < theta < 1.
AlphaFit fit_alpha(const ThicknessProfile& profile);
AlphaFit fit_alpha_points(const std::vector<std::pair<double, double>>& L_theta);

} // namespace fracheat
