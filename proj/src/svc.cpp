#include "fracheat/svc.hpp"
#include "fracheat/errors.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <utility>

namespace fracheat {

SvcParams SvcParams::explicit_ratios(std::vector<Rational> ratios)
{
    SvcParams p;
    p.parametric_ = false;
    p.explicit_ = std::move(ratios);
    for (auto& r : p.explicit_) {
        r.canonicalize();
        if (r <= 0 || r >= 1) throw ValidationError("gap ratio outside (0,1): " + rational_to_string(r));
    }
    return p;
}

SvcParams SvcParams::parametric(Rational c, Rational C, Rational alpha, unsigned precision_bits)
{
    SvcParams p;
    p.parametric_ = true;
    p.c_ = std::move(c);
    p.C_ = std::move(C);
    p.alpha_ = std::move(alpha);
    p.c_.canonicalize();
    p.C_.canonicalize();
    p.alpha_.canonicalize();
    p.precision_bits_ = precision_bits;
    if (p.c_ <= 0 || p.c_ >= 1) throw ValidationError("svc parameter c must lie in (0,1)");
    if (p.C_ <= 0) throw ValidationError("svc parameter C must be positive");
    if (p.alpha_ <= 0) throw ValidationError("svc parameter alpha must be positive");
    if (precision_bits == 0) throw ValidationError("precision_bits must be positive");
    return p;
}

SvcParams SvcParams::from_json(const nlohmann::json& j)
{
    if (j.contains("ratios")) {
        std::vector<Rational> rs;
        for (const auto& s : j.at("ratios")) rs.push_back(rational_from_string(s.get<std::string>()));
        return explicit_ratios(std::move(rs));
    }
    unsigned pb = j.value("precision_bits", 128u);
    return parametric(rational_from_string(j.at("c").get<std::string>()),
                      rational_from_string(j.at("C").get<std::string>()),
                      rational_from_string(j.at("alpha").get<std::string>()), pb);
}

nlohmann::json SvcParams::to_json() const
{
    nlohmann::json j;
    if (parametric_) {
        j["c"] = rational_to_string(c_);
        j["C"] = rational_to_string(C_);
        j["alpha"] = rational_to_string(alpha_);
        j["precision_bits"] = precision_bits_;
    } else {
        auto arr = nlohmann::json::array();
        for (const auto& r : explicit_) arr.push_back(rational_to_string(r));
        j["ratios"] = arr;
    }
    return j;
}

const Rational& SvcParams::ratio(unsigned n) const
{
    if (!parametric_) {
        if (n >= explicit_.size())
            throw ValidationError("explicit ratio list too short for level " + std::to_string(n));
        return explicit_[n];
    }
    while (cache_.size() <= n) {
        Dyadic d = round_scaled_exp(c_, C_, alpha_, static_cast<unsigned>(cache_.size()), precision_bits_);
        Rational r = d.to_rational();
        if (r <= 0 || r >= 1)
            throw NumericalError("rounded gap ratio left (0,1) at level " + std::to_string(cache_.size()));
        cache_.push_back(std::move(r));
    }
    return cache_[n];
}

double SvcParams::ratio_approx(unsigned n) const
{
    if (!parametric_) return n < explicit_.size() ? to_double(explicit_[n]) : 0.0;
    // c*exp(-C*2^(n*alpha)) in doubles; underflows to 0 for deep levels.
    double ex = to_double(C_) * std::exp2(static_cast<double>(n) * to_double(alpha_));
    return to_double(c_) * std::exp(-ex);
}

namespace {

// Divide a dyadic by an integer known to divide it exactly (up to powers of 2).
Dyadic dyadic_divexact(const Dyadic& x, const mpz_class& d)
{
    if (x.is_zero()) return x;
    unsigned long tz = mpz_scan1(d.get_mpz_t(), 0);
    mpz_class odd;
    mpz_tdiv_q_2exp(odd.get_mpz_t(), d.get_mpz_t(), tz);
    mpz_class m;
    if (odd == 1) {
        m = x.mantissa();
    } else {
        if (!mpz_divisible_p(x.mantissa().get_mpz_t(), odd.get_mpz_t()))
            throw NumericalError("internal: inexact division in svc ladder");
        mpz_divexact(m.get_mpz_t(), x.mantissa().get_mpz_t(), odd.get_mpz_t());
    }
    return Dyadic(std::move(m), x.exponent() - static_cast<long>(tz));
}

} // namespace

Rational SvcLadder::interval_length() const
{
    return len[depth].to_rational() / Rational(scale);
}

Rational SvcLadder::total_measure() const
{
    return mu[0].to_rational() / Rational(scale);
}

SvcLadder svc_ladder(const SvcParams& params, unsigned depth)
{
    SvcLadder lad;
    lad.depth = depth;
    lad.scale = 1;
    std::vector<mpz_class> nums(depth), dens(depth), us(depth);
    for (unsigned k = 0; k < depth; ++k) {
        const Rational& r = params.ratio(k);
        us[k] = r.get_num();
        dens[k] = r.get_den();
        nums[k] = dens[k] - us[k]; // numerator of 1 - r_k
        lad.scale *= dens[k];
    }

    lad.len.reserve(depth + 1);
    lad.gap.reserve(depth);
    lad.len.emplace_back(lad.scale, 0);
    for (unsigned j = 0; j < depth; ++j) {
        lad.gap.push_back(dyadic_divexact(lad.len[j] * Dyadic(us[j], 0), dens[j]));
        lad.len.push_back(dyadic_divexact(lad.len[j] * Dyadic(nums[j], 0), dens[j]).mul_pow2(-1));
    }

    mpz_class m(1);
    for (unsigned k = 0; k < depth; ++k) m *= nums[k];
    lad.mu.reserve(depth + 1);
    for (unsigned j = 0; j <= depth; ++j) lad.mu.emplace_back(m, -static_cast<long>(j));
    return lad;
}

IntervalUnion svc_construct(const SvcParams& params, unsigned depth, std::uint64_t max_total_bits)
{
    if (depth > 40) throw NumericalError("svc depth too large to materialize");
    SvcLadder lad = svc_ladder(params, depth);

    // Estimated exact-representation size: every endpoint carries roughly the
    // denominator of l_depth.
    std::uint64_t per_endpoint = lad.len[depth].mantissa_bits() +
                                 static_cast<std::uint64_t>(mpz_sizeinbase(lad.scale.get_mpz_t(), 2)) + 64;
    std::uint64_t total = (static_cast<std::uint64_t>(2) << depth) * per_endpoint;
    if (total > max_total_bits)
        throw NumericalError("svc_construct would need ~" + std::to_string(total / 8) +
                             " bytes of exact endpoints (budget " + std::to_string(max_total_bits / 8) +
                             "); use the recursive thickness evaluator instead");

    // Left endpoints as integers on the common grid 2^E / scale, where E is
    // the lowest exponent among the split offsets; splitting [a, a+l_j]
    // appends the right child at a + l_{j+1} + gap_j.
    std::vector<Dyadic> offsets;
    offsets.reserve(depth);
    long E = lad.len[depth].exponent();
    for (unsigned j = 0; j < depth; ++j) {
        offsets.push_back(lad.len[j + 1] + lad.gap[j]);
        E = std::min(E, offsets.back().exponent());
    }
    auto on_grid = [E](const Dyadic& d) {
        mpz_class v;
        mpz_mul_2exp(v.get_mpz_t(), d.mantissa().get_mpz_t(), d.exponent() - E);
        return v;
    };
    std::vector<mpz_class> lefts{mpz_class(0)};
    for (unsigned j = 0; j < depth; ++j) {
        mpz_class offset = on_grid(offsets[j]);
        std::size_t count = lefts.size();
        lefts.resize(2 * count);
        // fill from the back so each left endpoint is consumed before overwrite
        for (std::size_t i = count; i-- > 0;) {
            lefts[2 * i + 1] = lefts[i] + offset;
            lefts[2 * i] = std::move(lefts[i]);
        }
    }

    // common denominator scale * 2^{-E} (E <= 0 by construction)
    mpz_class den = lad.scale;
    if (E < 0) mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), -E);
    mpz_class len_int = on_grid(lad.len[depth]);
    std::vector<Interval> ivs;
    ivs.reserve(lefts.size());
    for (const auto& left : lefts)
        ivs.push_back({make_rational(left, den), make_rational(left + len_int, den)});
    return IntervalUnion::from_sorted_disjoint(std::move(ivs));
}

namespace {

// Memoized exact maximization of Scell(j, du) + Scell(j, dv) over
// du + dv = D, 0 <= du, dv <= len[j], where Scell(j, d) is the measure of
// K_depth inside one level-j cell within distance d of either cell edge
// (cells are palindromic, so both edges carry the same profile).
class PairMax {
public:
    explicit PairMax(const SvcLadder& lad, const mpz_class& query_scale)
        : lad_(lad), memo_(lad.depth + 1)
    {
        // rescale the ladder by the query denominator so budgets stay dyadic
        Dyadic s(query_scale, 0);
        len_.reserve(lad.len.size());
        gap_.reserve(lad.gap.size());
        mu_.reserve(lad.mu.size());
        for (const auto& v : lad.len) len_.push_back(v * s);
        for (const auto& v : lad.gap) gap_.push_back(v * s);
        for (const auto& v : lad.mu) mu_.push_back(v * s);
    }

    const Dyadic& len(unsigned j) const { return len_[j]; }
    const Dyadic& gap(unsigned j) const { return gap_[j]; }
    const Dyadic& mu(unsigned j) const { return mu_[j]; }

    // Edge-measure of one level-j cell: Leb(content ∩ [edge, edge + d]).
    Dyadic edge_measure(unsigned j, Dyadic d) const
    {
        Dyadic acc(0);
        if (d.sign() <= 0) return acc;
        for (; j < lad_.depth; ++j) {
            if (d >= len_[j]) return acc + mu_[j];
            if (d <= len_[j + 1]) continue;
            acc += mu_[j + 1];
            Dyadic past_gap = d - len_[j + 1] - gap_[j];
            if (past_gap.sign() <= 0) return acc;
            d = past_gap;
            // continue into the far child cell
        }
        return acc + (d >= len_[lad_.depth] ? len_[lad_.depth] : d);
    }

    struct Best {
        Dyadic value;
        Dyadic du; // left-pointer depth attaining the maximum
    };

    // Requires 0 <= D <= 2*len[j].
    const Best& solve(unsigned j, const Dyadic& D)
    {
        auto [it, inserted] = memo_[j].try_emplace(D);
        if (!inserted) return it->second;
        it->second = compute(j, D);
        return it->second;
    }

private:
    Best compute(unsigned j, const Dyadic& D)
    {
        if (D.sign() <= 0) return {Dyadic(0), Dyadic(0)};
        if (j == lad_.depth) {
            // solid leaf: capture everything
            Dyadic du = D >= len_[j] ? len_[j] : D;
            return {D, du};
        }
        const Dyadic& sub_len = len_[j + 1];
        const Dyadic& g = gap_[j];
        const Dyadic& sub_mu = mu_[j + 1];
        Dyadic two_sub = sub_len.mul_pow2(1);

        Best best{Dyadic(-1), Dyadic(0)};
        auto consider = [&](Dyadic value, Dyadic du) {
            if (value > best.value) best = {std::move(value), std::move(du)};
        };

        // both pointers in the near child cells
        if (D <= two_sub) {
            const Best& s = solve(j + 1, D);
            consider(s.value, s.du);
        }
        // one pointer in a near cell, the other inside the removed gap
        if (D >= sub_len && D <= two_sub + g) {
            Dyadic du = D - sub_len;
            if (du > sub_len) du = sub_len;
            consider(edge_measure(j + 1, du) + sub_mu, du);
        }
        // one near, one past the gap in the far child
        {
            Dyadic D1 = D - sub_len - g;
            if (D1.sign() >= 0 && D1 <= two_sub) {
                const Best& s = solve(j + 1, D1);
                consider(s.value + sub_mu, s.du); // du kept on the near side
            }
        }
        // both pointers inside removed gaps
        if (D >= two_sub && D <= two_sub + g.mul_pow2(1))
            consider(sub_mu.mul_pow2(1), D.mul_pow2(-1));
        // one in a gap, one in a far child
        {
            Dyadic D1 = D - sub_len - g;
            if (D1 >= sub_len && D1 <= two_sub + g) {
                Dyadic b = D1 - sub_len;
                if (b > sub_len) b = sub_len;
                consider(sub_mu.mul_pow2(1) + edge_measure(j + 1, b), D - sub_len - g - b);
            }
        }
        // both pointers in far children
        {
            Dyadic D2 = D - (sub_len + g).mul_pow2(1);
            if (D2.sign() >= 0) {
                const Best& s = solve(j + 1, D2);
                consider(s.value + sub_mu.mul_pow2(1), sub_len + g + s.du);
            }
        }
        return best;
    }

    const SvcLadder& lad_;
    std::vector<Dyadic> len_, gap_, mu_;
    std::vector<std::map<Dyadic, Best>> memo_;
};

} // namespace

SvcThickness svc_min_local_measure(const SvcParams& params, unsigned depth, const Rational& L)
{
    if (L <= 0) throw ValidationError("thickness scale L must be positive");
    SvcLadder lad = svc_ladder(params, depth);

    PairMax pm(lad, L.get_den());
    // window diameter 2L in the common scale P * den(L)
    Dyadic W2(L.get_num() * lad.scale, 1);

    // window inside a single leaf interval (covers no removed gap)
    Dyadic best_capture = W2 >= pm.len(depth) ? pm.len(depth) : W2;
    Dyadic best_center = W2 >= pm.len(depth) ? pm.len(depth).mul_pow2(-1) : W2.mul_pow2(-1);

    // windows covering exactly one gap of level m, flanked by two level-(m+1)
    // cells; realized on the leftmost level-m cell [0, len_m]
    for (unsigned m = 0; m < depth; ++m) {
        if (W2 <= pm.gap(m)) continue;
        Dyadic D = W2 - pm.gap(m);
        Dyadic value, du;
        if (D >= pm.len(m + 1).mul_pow2(1)) {
            value = pm.mu(m + 1).mul_pow2(1);
            du = pm.len(m + 1);
        } else {
            const auto& s = pm.solve(m + 1, D);
            value = s.value;
            du = s.du;
        }
        if (value > best_capture) {
            best_capture = value;
            // left window edge sits du inside the left flank cell
            best_center = pm.len(m + 1) - du + W2.mul_pow2(-1);
        }
    }

    Rational scale_q(lad.scale * L.get_den());
    SvcThickness out;
    out.max_capture = best_capture.to_rational() / scale_q;
    out.theta = (W2 - best_capture).to_rational() / W2.to_rational();
    out.argmin_x = best_center.to_rational() / scale_q;
    return out;
}

} // namespace fracheat
