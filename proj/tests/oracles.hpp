#pragma once

// Brute-force reference implementations used only by tests. They must stay
// independent of the library code paths they check: the thickness scan walks
// a dense grid, the Rayleigh minimizer is a derivative-free random search on
// the unit sphere, and the probe oracle is an adaptive Simpson rule.

#include "fracheat/interval_union.hpp"
#include "fracheat/probe.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace fracheat::testing {

struct BruteThickness {
    double theta = 0;
    double argmin_x = 0;
};

// Dense-grid scan of x -> Leb(omega ∩ B(x,L)) / 2L with omega = R \ K, in
// doubles. Grid step defaults to 2^-14.
inline BruteThickness brute_thickness(const IntervalUnion& K, double L,
                                      double step = 1.0 / 16384)
{
    std::vector<double> as, bs, prefix{0.0};
    for (const auto& iv : K.intervals()) {
        as.push_back(to_double(iv.a));
        bs.push_back(to_double(iv.b));
        prefix.push_back(prefix.back() + to_double(iv.b - iv.a));
    }
    auto measure_upto = [&](double t) {
        std::size_t lo = 0, hi = as.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (as[mid] > t) hi = mid;
            else lo = mid + 1;
        }
        if (lo == 0) return 0.0;
        return prefix[lo - 1] + std::min(bs[lo - 1], t) - std::min(as[lo - 1], t);
    };
    double x0 = (as.empty() ? 0.0 : as.front()) - L;
    double x1 = (bs.empty() ? 0.0 : bs.back()) + L;
    BruteThickness best;
    best.theta = 1.0;
    best.argmin_x = x0;
    long n = static_cast<long>(std::ceil((x1 - x0) / step));
    for (long i = 0; i <= n; ++i) {
        double x = x0 + i * step;
        double capture = measure_upto(x + L) - measure_upto(x - L);
        double theta = 1.0 - capture / (2 * L);
        if (theta < best.theta) {
            best.theta = theta;
            best.argmin_x = x;
        }
    }
    return best;
}

// Derivative-free minimization of the generalized Rayleigh quotient
// x^* A x / x^* B x over the complex unit sphere: best-of-many random starts
// followed by greedy random perturbations with a shrinking step.
inline double sphere_min_rayleigh(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                                  std::mt19937_64& rng)
{
    const int n = static_cast<int>(A.rows());
    std::normal_distribution<double> gauss;
    auto random_vec = [&] {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
        v.normalize();
        return v;
    };
    auto quotient = [&](const Eigen::VectorXcd& v) {
        double num = std::real(std::complex<double>(v.adjoint() * (A * v)));
        double den = std::real(std::complex<double>(v.adjoint() * (B * v)));
        return num / den;
    };

    // B is diagonal in every use here (identity or the diagonal reference
    // form), so the pencil whitens exactly by scaling coordinates.
    Eigen::VectorXd dinv(n);
    for (int i = 0; i < n; ++i) dinv(i) = 1.0 / std::sqrt(std::real(B(i, i)));
    Eigen::MatrixXcd W = dinv.asDiagonal() * A * dinv.asDiagonal();
    W = ((W + W.adjoint()) / 2).eval();

    auto wq = [&](const Eigen::VectorXcd& v) {
        return std::real(std::complex<double>(v.adjoint() * (W * v))) / v.squaredNorm();
    };

    Eigen::VectorXcd best = random_vec();
    double best_q = wq(best);
    for (int i = 0; i < 2000; ++i) {
        Eigen::VectorXcd v = random_vec();
        double q = wq(v);
        if (q < best_q) {
            best_q = q;
            best = v;
        }
    }
    // greedy annealed walk (the Rayleigh quotient has no spurious strict
    // local minima) ...
    for (double delta = 1.0; delta > 1e-7; delta *= 0.6) {
        for (int i = 0; i < 400; ++i) {
            Eigen::VectorXcd v = best + delta * random_vec();
            v.normalize();
            double q = wq(v);
            if (q < best_q) {
                best_q = q;
                best = v;
            }
        }
    }
    // ... polished by inverse power iteration, with the 5x5 solve done by a
    // hand-rolled partially pivoted LU (no library eigensolver involved)
    auto solve = [n](Eigen::MatrixXcd M, Eigen::VectorXcd rhs) {
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::abs(M(r, col)) > std::abs(M(piv, col))) piv = r;
            M.row(col).swap(M.row(piv));
            std::swap(rhs(col), rhs(piv));
            for (int r = col + 1; r < n; ++r) {
                std::complex<double> f = M(r, col) / M(col, col);
                M.row(r) -= f * M.row(col);
                rhs(r) -= f * rhs(col);
            }
        }
        Eigen::VectorXcd x(n);
        for (int r = n - 1; r >= 0; --r) {
            std::complex<double> acc = rhs(r);
            for (int c = r + 1; c < n; ++c) acc -= M(r, c) * x(c);
            x(r) = acc / M(r, r);
        }
        return x;
    };
    double prev = best_q;
    for (int k = 0; k < 200; ++k) {
        best = solve(W, best);
        best.normalize();
        best_q = wq(best);
        if (std::abs(prev - best_q) <= 1e-15 * std::max(std::abs(best_q), 1e-300)) break;
        prev = best_q;
    }
    return best_q;
}

// Adaptive Simpson quadrature of the coherent-state integrand, independent of
// the trapezoid evaluator.
inline std::complex<double> adaptive_g_oracle(const ProbeParams& params, double t, double x,
                                              double tol = 1e-10)
{
    auto f = [&](double xi) -> std::complex<double> {
        double u = xi - params.xi0;
        double env = params.chi(u) * std::exp(-u * u / (2 * params.h) -
                                              t * std::pow(std::abs(xi), params.s) *
                                                  std::pow(params.h, -params.s));
        return env * std::polar(1.0, x * xi / params.h);
    };
    struct Rec {
        double a, b;
        std::complex<double> fa, fm, fb, whole;
    };
    auto simpson = [&](double a, double b, std::complex<double> fa, std::complex<double> fm,
                       std::complex<double> fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); };

    std::function<std::complex<double>(double, double, std::complex<double>, std::complex<double>,
                                       std::complex<double>, std::complex<double>, double, int)>
        go = [&](double a, double b, std::complex<double> fa, std::complex<double> fm,
                 std::complex<double> fb, std::complex<double> whole, double eps,
                 int depth) -> std::complex<double> {
        double m = (a + b) / 2;
        double lm = (a + m) / 2, rm = (m + b) / 2;
        std::complex<double> flm = f(lm), frm = f(rm);
        std::complex<double> left = simpson(a, m, fa, flm, fm);
        std::complex<double> right = simpson(m, b, fm, frm, fb);
        if (depth > 40 || std::abs(left + right - whole) < 15 * eps)
            return left + right + (left + right - whole) / 15.0;
        return go(a, m, fa, flm, fm, left, eps / 2, depth + 1) +
               go(m, b, fm, frm, fb, right, eps / 2, depth + 1);
    };

    // split the support into panels so oscillation is resolved before recursion
    double a0 = params.xi0 - params.chi.w, b0 = params.xi0 + params.chi.w;
    int panels = 64 + static_cast<int>(std::abs(x) / params.h);
    std::complex<double> total = 0;
    for (int i = 0; i < panels; ++i) {
        double a = a0 + (b0 - a0) * i / panels;
        double b = a0 + (b0 - a0) * (i + 1) / panels;
        std::complex<double> fa = f(a), fb = f(b), fm = f((a + b) / 2);
        total += go(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol / panels, 0);
    }
    return total;
}

} // namespace fracheat::testing
