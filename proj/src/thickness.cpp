#include "fracheat/thickness.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/fit.hpp"
#include "fracheat/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracheat {

LocalMeasure min_local_measure(const IntervalUnion& K, const Rational& L)
{
    if (L <= 0) throw ValidationError("thickness scale L must be positive");
    if (K.empty()) return {Rational(1), Rational(0)};

    MeasureIndex index(K);
    std::vector<Rational> candidates;
    candidates.reserve(4 * K.size() + 2);
    for (const auto& iv : K.intervals()) {
        candidates.push_back(iv.a - L);
        candidates.push_back(iv.a + L);
        candidates.push_back(iv.b - L);
        candidates.push_back(iv.b + L);
    }
    auto h = K.hull();
    candidates.push_back(h.a - L);
    candidates.push_back(h.b + L);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    Rational best_capture(-1);
    Rational best_x(0);
    for (const auto& x : candidates) {
        Rational capture = index.window(x - L, x + L);
        if (capture > best_capture) {
            best_capture = capture;
            best_x = x;
        }
    }
    Rational two_L = 2 * L;
    return {(two_L - best_capture) / two_L, best_x};
}

ThicknessProfile thickness_profile(const IntervalUnion& K, std::vector<Rational> Ls)
{
    std::sort(Ls.begin(), Ls.end());
    ThicknessProfile profile;
    profile.samples.reserve(Ls.size());
    for (const auto& L : Ls) {
        auto lm = min_local_measure(K, L);
        profile.samples.push_back({L, lm.theta, lm.argmin_x, std::nullopt, std::nullopt});
    }
    return profile;
}

ThicknessProfile svc_thickness_profile(const SvcParams& params, unsigned depth,
                                       std::vector<Rational> Ls)
{
    std::sort(Ls.begin(), Ls.end());
    if (depth > 0) params.ratio(depth - 1); // warm the ratio cache before going parallel
    ThicknessProfile profile;
    profile.samples.resize(Ls.size());
    std::vector<std::string> errors(Ls.size());
    parallel_for_index(Ls.size(), [&](std::size_t i) {
        try {
            auto t = svc_min_local_measure(params, depth, Ls[i]);
            profile.samples[i] = {Ls[i], t.theta, t.argmin_x, std::nullopt, std::nullopt};
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw NumericalError(e);
    return profile;
}

namespace {

// Certifies summability by partial-sum stagnation and returns a tail-sum
// evaluator over the approximate ratios.
struct RatioTails {
    std::vector<double> r; // r[0..m)

    double tail_from(long n) const
    {
        if (n < 0) n = 0;
        double s = 0;
        for (std::size_t k = static_cast<std::size_t>(n); k < r.size(); ++k) s += r[k];
        return s;
    }
};

RatioTails certify_summable(const SvcParams& params)
{
    RatioTails tails;
    const double tol = 1e-12;
    const std::size_t cap = 65536;
    double sum = 0;
    bool stagnated = false;
    for (std::size_t m = 0; m < cap; ++m) {
        double rm = params.ratio_approx(static_cast<unsigned>(m));
        if (rm == 0.0 && m > 0) break; // end of explicit list, or double underflow
        tails.r.push_back(rm);
        sum += rm;
        if (params.is_parametric() && !stagnated && rm < tol * std::max(sum, 1e-300)) {
            stagnated = true; // summability certified; keep extending for tail queries
        }
    }
    if (params.is_parametric()) {
        if (stagnated || (tails.r.size() < cap)) return tails;
        throw ValidationError("ratio series did not stagnate within the inspection horizon");
    }
    double last = tails.r.empty() ? 1.0 : tails.r.back();
    if (sum > 0 && last / sum < tol) return tails;
    throw ValidationError("ratio series is not certifiably summable "
                          "(partial sums do not stagnate)");
}

} // namespace

SvcBoundsReport verify_svc_bounds(const SvcParams& params, unsigned depth,
                                  std::vector<Rational> Ls, double kappa)
{
    if (Ls.empty()) throw ValidationError("verify_svc_bounds needs at least one scale");
    for (const auto& L : Ls)
        if (L <= 0) throw ValidationError("thickness scale L must be positive");
    std::sort(Ls.begin(), Ls.end());

    RatioTails tails = certify_summable(params);

    SvcLadder lad = svc_ladder(params, depth);
    Rational min_L = Ls.front();
    if (lad.interval_length() * 16 >= min_L)
        throw ValidationError("insufficient depth: l_depth must be < min(L)/16");

    SvcBoundsReport report;
    report.kappa = kappa;
    report.c0 = to_double(lad.total_measure());
    report.tail_beyond_depth = tails.tail_from(depth);

    // L0: largest sampled L with ceil(log2(kappa*c0/L)) >= 1, i.e. L < kappa*c0
    report.L0 = 0;
    for (const auto& L : Ls) {
        double Ld = to_double(L);
        if (Ld < kappa * report.c0) report.L0 = std::max(report.L0, Ld);
    }

    report.profile = svc_thickness_profile(params, depth, Ls);

    double c_fit = std::numeric_limits<double>::infinity();
    double C_fit = 0;
    bool feasible = true;
    for (const auto& s : report.profile.samples) {
        SvcBoundsRow row;
        row.L = to_double(s.L);
        row.theta = to_double(s.theta);
        long n_lo = static_cast<long>(std::ceil(std::log2(kappa * report.c0 / row.L)));
        long n_hi = static_cast<long>(std::ceil(std::log2(report.c0 / (4 * row.L))));
        row.lower_tail = tails.tail_from(n_lo);
        row.upper_tail = tails.tail_from(n_hi);
        if (row.L <= report.L0) {
            if (row.lower_tail > 0) c_fit = std::min(c_fit, row.theta / row.lower_tail);
            if (row.upper_tail > 0) C_fit = std::max(C_fit, row.theta / row.upper_tail);
            else if (row.theta > 0) feasible = false; // theta>0 cannot sit under a zero envelope
        }
        report.rows.push_back(row);
    }
    if (!std::isfinite(c_fit)) c_fit = 0; // every lower tail underflowed; bound degenerate
    report.c_fit = c_fit;
    report.C_fit = C_fit;

    bool pass = feasible;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        auto& row = report.rows[i];
        if (row.L <= report.L0) {
            row.pass = c_fit * row.lower_tail <= row.theta * (1 + 1e-12) &&
                       row.theta <= C_fit * row.upper_tail * (1 + 1e-12);
            pass = pass && row.pass;
        } else {
            row.pass = true; // outside the validity range of the envelope
        }
        report.profile.samples[i].lower_bound = c_fit * row.lower_tail;
        report.profile.samples[i].upper_bound = C_fit * row.upper_tail;
    }
    report.pass = pass;
    return report;
}

AlphaFit fit_alpha_points(const std::vector<std::pair<double, double>>& L_theta)
{
    std::vector<double> logL;
    std::vector<double> theta;
    for (const auto& [L, th] : L_theta) {
        if (th == 0)
            throw NumericalError("not exponentially thick at scale L=" + std::to_string(L) +
                                 " (theta = 0)");
        if (th >= 1) continue; // boundary of the model
        logL.push_back(std::log(L));
        theta.push_back(th);
    }
    if (L_theta.size() >= 1 && theta.empty())
        throw ValidationError("theta at model boundary (all samples have theta >= 1)");
    if (theta.size() < 8)
        throw ValidationError("fit_alpha needs at least 8 samples with 0 < theta < 1");

    double max_theta = *std::max_element(theta.begin(), theta.end());

    // theta = c * exp(-C L^-alpha): for a trial c > max(theta) the transform
    // y = log(-log(theta/c)) is linear in log L; pick c by maximizing r^2.
    auto fit_for = [&](double log_eps) {
        double c = max_theta * std::exp(std::exp(log_eps));
        std::vector<double> ys;
        ys.reserve(theta.size());
        for (double th : theta) ys.push_back(std::log(-std::log(th / c)));
        return linear_fit(logL, ys);
    };
    auto score = [&](double log_eps) { return fit_for(log_eps).r2; };

    // coarse scan then golden refinement (r^2 is smooth in log eps)
    double best_le = -30, best_r2 = -1;
    for (int i = 0; i <= 400; ++i) {
        double le = -30 + i * (33.0 - (-30.0)) / 400.0;
        double r2 = score(le);
        if (r2 > best_r2) {
            best_r2 = r2;
            best_le = le;
        }
    }
    double le = golden_max(score, best_le - 0.2, best_le + 0.2);
    LinearFit lf = fit_for(le);

    AlphaFit out;
    out.alpha_hat = -lf.slope;
    out.C_hat = std::exp(lf.intercept);
    out.c_hat = max_theta * std::exp(std::exp(le));
    out.r2 = lf.r2;
    return out;
}

AlphaFit fit_alpha(const ThicknessProfile& profile)
{
    std::vector<std::pair<double, double>> pts;
    pts.reserve(profile.samples.size());
    for (const auto& s : profile.samples)
        pts.emplace_back(to_double(s.L), to_double(s.theta));
    return fit_alpha_points(pts);
}

} // namespace fracheat
