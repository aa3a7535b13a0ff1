#pragma once

#include "fracheat/interval_union.hpp"
#include "fracheat/numbers.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace fracheat {

/// Gap-ratio sequence of a Smith-Volterra-Cantor construction. Either an
/// explicit list of rationals in (0,1), or the parametric family
/// r_n = c*exp(-C*2^(n*alpha)) rounded to the nearest multiple of
/// 2^-precision_bits (so that all endpoint arithmetic stays exact).
class SvcParams {
public:
    static SvcParams explicit_ratios(std::vector<Rational> ratios);
    static SvcParams parametric(Rational c, Rational C, Rational alpha,
                                unsigned precision_bits = 128);

    static SvcParams from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    bool is_parametric() const { return parametric_; }
    unsigned precision_bits() const { return precision_bits_; }
    const Rational& c() const { return c_; }
    const Rational& C() const { return C_; }
    const Rational& alpha() const { return alpha_; }

    /// r_n, validated to lie strictly in (0,1). Parametric values are cached.
    const Rational& ratio(unsigned n) const;

    /// r_n as a double (0 when it underflows); used by tail-sum reporting.
    double ratio_approx(unsigned n) const;

private:
    SvcParams() = default;

    bool parametric_ = false;
    std::vector<Rational> explicit_;
    Rational c_, C_, alpha_;
    unsigned precision_bits_ = 128;
    mutable std::vector<Rational> cache_;
};

/// Per-level data of K_depth, scaled by P = prod(den(r_k)) so every quantity
/// is an exact dyadic number: len[j] and gap[j] are the scaled interval
/// length l_j and removed-gap width r_j*l_j, mu[j] the scaled measure of
/// K_depth inside one level-j interval. l_{j+1} = (1-r_j)/2 * l_j holds
/// exactly, as does l_j = 2*l_{j+1} + gap_j.
struct SvcLadder {
    unsigned depth = 0;
    mpz_class scale;          // P
    std::vector<Dyadic> len;  // 0..depth
    std::vector<Dyadic> gap;  // 0..depth-1
    std::vector<Dyadic> mu;   // 0..depth

    Rational interval_length() const;     // l_depth, unscaled
    Rational total_measure() const;       // Leb(K_depth) = prod(1-r_k), unscaled
};

SvcLadder svc_ladder(const SvcParams& params, unsigned depth);

/// Materializes K_depth as 2^depth closed intervals in [0,1]. Rejects
/// constructions whose exact representation would exceed max_total_bits
/// (resource error rather than silent truncation).
IntervalUnion svc_construct(const SvcParams& params, unsigned depth,
                            std::uint64_t max_total_bits = (1ull << 33));

struct SvcThickness {
    Rational theta;        // inf_x Leb(omega ∩ B(x,L)) / (2L), omega = R \ K_depth
    Rational argmin_x;     // a minimizing window center
    Rational max_capture;  // Leb(K_depth ∩ B(argmin_x, L))
};

/// Exact thickness of the complement of K_depth at scale L, computed on the
/// level structure without materializing the 2^depth intervals. Windows are
/// classified by the topmost removed gap they cover; the capture on each side
/// of that gap is a cell-edge measure, maximized by an exact memoized
/// recursion over levels. Agrees with the flat breakpoint sweep (tested).
SvcThickness svc_min_local_measure(const SvcParams& params, unsigned depth, const Rational& L);

} // namespace fracheat
