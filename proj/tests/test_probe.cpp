#include "fracheat/probe.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/fit.hpp"
#include "fracheat/grid.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace fracheat;

TEST_CASE("bump profile is a plateau with superexponentially small edges")
{
    ChiProfile chi;
    CHECK(chi(0.0) == 1.0);
    CHECK(chi(0.25) == 1.0);
    CHECK(chi(-0.2) == 1.0);
    CHECK(chi(0.5) == 0.0);
    CHECK(chi(0.7) == 0.0);
    CHECK(chi(0.4999) < 1e-300);
    CHECK(chi(0.35) > 0.0);
    CHECK(chi(0.35) < 1.0);
    CHECK(chi(0.35) == chi(-0.35));
    CHECK_THROWS_AS((ChiProfile{0.5, 0.6}.validate(1.0)), ValidationError);
    CHECK_THROWS_AS((ChiProfile{1.5, 0.25}.validate(1.0)), ValidationError);
}

TEST_CASE("probe parameter validation")
{
    ProbeParams p;
    p.quad_points = 32;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p.quad_points = 128;
    p.s = 1.2;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p.s = 0.5;
    p.h = -1;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("at the origin the probe mass is sqrt(2 pi h)")
{
    // the deviation from sqrt(2 pi h) is bounded by the Gaussian mass beyond
    // the chi plateau: |g(0,0) - sqrt(2 pi h)| <= sqrt(2 pi h) exp(-p^2/2h)
    for (double h : {1.0 / 16, 1.0 / 64, 1.0 / 1024}) {
        ProbeParams p;
        p.h = h;
        auto v = eval_g(p, 0.0, 0.0);
        double expected = std::sqrt(2 * M_PI * h);
        double plateau_tail = std::exp(-p.chi.p * p.chi.p / (2 * h));
        CHECK(std::abs(v.value - expected) < expected * (plateau_tail + 1e-9));
        CHECK(v.err < 1e-8 * expected);
    }
    // deep in the asymptotic regime the value is clean
    ProbeParams tight;
    tight.h = 1.0 / 1024;
    auto v = eval_g(tight, 0.0, 0.0);
    CHECK(std::abs(v.value - std::sqrt(2 * M_PI / 1024)) < 2e-6 * std::sqrt(2 * M_PI / 1024));
}

TEST_CASE("quadrature agrees with an adaptive Simpson oracle")
{
    ProbeParams p;
    p.s = 0.5;
    p.h = 0.01;
    for (double t : {0.0, 0.4}) {
        for (double x : {0.0, 0.07, -0.2}) {
            auto v = eval_g(p, t, x, 1e-11);
            auto oracle = testing::adaptive_g_oracle(p, t, x, 1e-11);
            CHECK(std::abs(v.value - oracle) <= 1e-8 * std::abs(oracle));
        }
    }
}

TEST_CASE("interior asymptotics tighten as h decreases")
{
    // a wide plateau keeps the exp(-p^2/2h) bump tail below the h^{1-s} term
    // over the whole sweep
    ProbeParams p;
    p.s = 1.0 / 3;
    p.xi0 = 4.0;
    p.chi.w = 2.0;
    p.chi.p = 1.0;
    std::vector<double> hs;
    for (int e = 4; e <= 9; ++e) hs.push_back(std::pow(2.0, -e));
    double eta = determine_eta(p, hs, 1.0);
    REQUIRE(eta >= 0.15); // empirically validated interior radius
    auto report = check_interior_asymptotics(p, hs, 1.0, eta / 2);
    CHECK(report.monotone_ok);
    CHECK(report.max_rel_err.front() > report.max_rel_err.back());
    CHECK(report.fitted_order > 1 - p.s - 0.35);
    CHECK(report.fitted_order < 1 - p.s + 0.35);
    CHECK_THROWS_AS(check_interior_asymptotics(p, hs, 1.0, 4.5), ValidationError);
}

TEST_CASE("exterior values decay like exp(-c/h) with an |x|^-2 prefactor")
{
    ProbeParams p;
    p.s = 0.5;
    std::vector<double> hs;
    for (int e = 3; e <= 6; ++e) hs.push_back(std::pow(2.0, -e));
    std::vector<double> xs = {0.45, 0.9, 1.8};
    auto report = check_exterior_decay(p, hs, 0.5, 0.3, xs);
    CHECK(report.c_positive);
    CHECK(report.cert.c > 0.01);
    CHECK(report.cert.C > 0);
    if (report.prefactor_ratio_2x > 0) {
        CHECK(report.prefactor_ratio_2x > 2.0);  // |x|^-2 gives 4, within x2 slack
        CHECK(report.prefactor_ratio_2x < 8.0);
    }
    CHECK_THROWS_AS(check_exterior_decay(p, hs, 0.5, 0.3, {0.1}), ValidationError);
}

TEST_CASE("far-field values are negligible")
{
    ProbeParams p;
    p.s = 0.5;
    p.h = 1.0 / 16;
    auto v = eval_g(p, 0.0, 100.0);
    CHECK(std::abs(v.value) + v.err < 1e-8 * std::sqrt(p.h));
}

TEST_CASE("probe solves the fractional heat equation on the grid")
{
    // sample g(t0, .), evolve spectrally by delta, compare with g(t0+delta, .)
    ProbeParams p;
    p.s = 1.0 / 3;
    p.h = 1.0 / 64;
    ProbeEvaluator ev(p);
    GridSpec grid{16.0, 4096};
    double t0 = 0.1, delta = 0.15;
    auto f0 = GridField::sample(grid, [&](double x) { return ev.eval(t0, x, 1e-9).value; });
    auto evolved = f0.evolved(delta, p.s);
    auto f1 = GridField::sample(grid, [&](double x) { return ev.eval(t0 + delta, x, 1e-9).value; });
    double diff = 0;
    for (int i = 0; i < grid.N; ++i)
        diff += std::norm(evolved.coeffs()[i] - f1.coeffs()[i]);
    diff = std::sqrt(grid.X * diff);
    CHECK(diff <= 1e-6 * f1.l2());
}

TEST_CASE("final-time mass obeys the exp(-C h^-s) lower bound stably")
{
    ProbeParams p;
    p.s = 0.5;
    double T = 0.5, eta = 0.3;
    std::vector<double> hs, norms;
    for (int e = 4; e <= 8; ++e) hs.push_back(std::pow(2.0, -e));
    for (double h : hs) {
        ProbeEvaluator ev(p.with_h(h));
        // Simpson over |x| < eta of |g(T,x)|^2
        int n = 200;
        double dx = 2 * eta / n, acc = 0;
        for (int i = 0; i <= n; ++i) {
            double x = -eta + i * dx;
            double f = std::norm(ev.eval(T, x, 1e-8).value);
            acc += f * ((i == 0 || i == n) ? 1 : (i & 1 ? 4 : 2));
        }
        norms.push_back(std::sqrt(acc * dx / 3));
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        xs.push_back(std::pow(hs[i], -p.s));
        ys.push_back(std::log(norms[i]));
    }
    auto lf = linear_fit(xs, ys);
    CHECK(lf.slope < 0); // decay in h^{-s}
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double resid = ys[i] - (lf.intercept + lf.slope * xs[i]);
        CHECK(std::abs(resid) < std::log(2.0)); // constants stable within x2
    }
}

TEST_CASE("necessity experiment on the full line stays below 1/T")
{
    ProbeParams p;
    p.s = 1.0 / 3;
    double T = 0.5;
    std::vector<double> hs = {1.0 / 64, 1.0 / 128};
    DecayCertificate cert;
    cert.eta = 0.4;
    cert.c = 0.05;
    cert.C = 1.0;
    cert.T = T;
    cert.h_min = hs.back();
    cert.h_max = hs.front();
    auto rows = necessity_experiment(IntervalUnion(), p, hs, T, 1.0, cert);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.ratio <= 1.0 / T * (1 + 1e-3));
        CHECK(row.lhs > 0);
        CHECK(row.rhs > 0);
    }
    DecayCertificate missing;
    CHECK_THROWS_AS(necessity_experiment(IntervalUnion(), p, hs, T, 1.0, missing),
                    ValidationError);
}
