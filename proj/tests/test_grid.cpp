#include "fracheat/grid.hpp"
#include "fracheat/errors.hpp"

#include <doctest.h>

#include <random>

using namespace fracheat;
using cplx = std::complex<double>;

namespace {
GridField random_field(const GridSpec& grid, std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss;
    std::vector<cplx> v(grid.N);
    for (auto& z : v) z = cplx(gauss(rng), gauss(rng));
    return GridField::from_values(grid, std::move(v));
}
} // namespace

TEST_CASE("grid validation")
{
    CHECK_THROWS_AS((GridSpec{8.0, 100}.validate()), ValidationError);
    CHECK_THROWS_AS((GridSpec{-1.0, 64}.validate()), ValidationError);
    GridSpec g{8.0, 64};
    CHECK(g.nyquist() == doctest::Approx(M_PI * 8));
}

TEST_CASE("single Fourier mode lands in a single coefficient bin")
{
    GridSpec grid{8.0, 256};
    double xi = 2 * M_PI * 3 / grid.X;
    auto f = GridField::sample(grid, [&](double x) { return std::polar(1.0, xi * x); });
    for (int i = 0; i < grid.N; ++i) {
        double expected = grid.signed_index(i) == 3 ? 1.0 : 0.0;
        CHECK(std::abs(f.coeffs()[i] - expected) < 1e-12);
    }
}

TEST_CASE("Plancherel identity holds to 1e-12 relative")
{
    std::mt19937_64 rng(5);
    GridSpec grid{8.0, 512};
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_field(grid, rng);
        double from_values = 0;
        for (const auto& v : f.values()) from_values += std::norm(v);
        from_values *= grid.X / grid.N;
        CHECK(std::abs(from_values - f.l2_sq()) <= 1e-12 * f.l2_sq());
    }
}

TEST_CASE("evolution acts diagonally on modes")
{
    GridSpec grid{8.0, 256};
    double xi = 2 * M_PI * 5 / grid.X;
    auto f = GridField::sample(grid, [&](double x) { return std::polar(1.0, xi * x); });
    auto g = f.evolved(0.7, 0.5);
    double factor = std::exp(-0.7 * std::pow(xi, 0.5));
    for (int i = 0; i < grid.N; ++i) {
        cplx expected = (grid.signed_index(i) == 5 ? factor : 0.0);
        CHECK(std::abs(g.coeffs()[i] - expected) < 1e-13);
    }

    auto id = f.evolved(0.0, 0.5);
    for (int i = 0; i < grid.N; ++i) CHECK(id.coeffs()[i] == f.coeffs()[i]);

    CHECK_THROWS_AS(f.evolved(-1.0, 0.5), ValidationError);
    CHECK_THROWS_AS(f.evolved(1.0, 0.0), ValidationError);
}

TEST_CASE("classical heat flow matches the coefficient-space oracle")
{
    std::mt19937_64 rng(17);
    GridSpec grid{8.0, 512};
    auto f = GridField::sample(grid, [&](double x) { return std::exp(-x * x); });
    auto g = f.evolved(0.1, 2.0);
    double oracle = 0;
    for (int i = 0; i < grid.N; ++i) {
        double xi = grid.freq_of_bin(i);
        oracle += std::norm(f.coeffs()[i] * std::exp(-0.1 * xi * xi));
    }
    oracle *= grid.X;
    CHECK(std::abs(g.l2_sq() - oracle) <= 1e-12 * oracle);
    (void)rng;
}

TEST_CASE("band projection")
{
    std::mt19937_64 rng(23);
    GridSpec grid{8.0, 256};
    auto f = random_field(grid, rng);

    double ny = grid.nyquist();
    auto full = f.band_projected(ny * ny + 1);
    for (int i = 0; i < grid.N; ++i) CHECK(full.coeffs()[i] == f.coeffs()[i]);

    auto dc = f.band_projected(0.0);
    for (int i = 0; i < grid.N; ++i) {
        if (grid.signed_index(i) == 0) CHECK(dc.coeffs()[i] == f.coeffs()[i]);
        else CHECK(dc.coeffs()[i] == cplx(0));
    }

    auto once = f.band_projected(50.0);
    auto twice = once.band_projected(50.0);
    for (int i = 0; i < grid.N; ++i) CHECK(once.coeffs()[i] == twice.coeffs()[i]); // idempotent

    CHECK_THROWS_AS(f.band_projected(-1.0), ValidationError);
}

TEST_CASE("band projection is self-adjoint in the discrete inner product")
{
    std::mt19937_64 rng(37);
    GridSpec grid{8.0, 128};
    auto f = random_field(grid, rng);
    auto g = random_field(grid, rng);
    auto inner = [&](const GridField& u, const GridField& v) {
        std::complex<double> acc = 0;
        for (int i = 0; i < grid.N; ++i) acc += std::conj(u.coeffs()[i]) * v.coeffs()[i];
        return acc * grid.X;
    };
    double lam = 30.0;
    auto lhs = inner(f.band_projected(lam), g);
    auto rhs = inner(f, g.band_projected(lam));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
}

TEST_CASE("restricted mass with exact cell overlaps")
{
    std::mt19937_64 rng(29);
    GridSpec grid{8.0, 512};
    auto f = random_field(grid, rng);

    IntervalUnion full({{Rational(-4), Rational(4)}});
    CHECK(restrict_mass(full, f) == doctest::Approx(f.l2_sq()).epsilon(1e-12));

    CHECK(restrict_mass(IntervalUnion(), f) == 0.0);

    // constant field: mass over omega equals its measure
    auto ones = GridField::sample(grid, [](double) { return 1.0; });
    IntervalUnion omega({{make_rational(-13, 7), make_rational(1, 3)},
                         {make_rational(1, 2), make_rational(2, 1)}});
    double m = to_double(omega.measure());
    CHECK(restrict_mass(omega, ones) == doctest::Approx(m).epsilon(1e-10));

    IntervalUnion outside({{Rational(3), Rational(5)}});
    CHECK_THROWS_AS(restrict_mass(outside, f), ValidationError);
}

TEST_CASE("semigroup law and contraction")
{
    std::mt19937_64 rng(31);
    GridSpec grid{8.0, 256};
    for (double s : {1.0 / 3, 0.5, 1.0, 2.0}) {
        for (int trial = 0; trial < 25; ++trial) {
            auto f = random_field(grid, rng);
            std::uniform_real_distribution<double> tdist(0.0, 1.0);
            double t1 = tdist(rng), t2 = tdist(rng);
            auto two_step = f.evolved(t1, s).evolved(t2, s);
            auto one_step = f.evolved(t1 + t2, s);
            double diff = 0;
            for (int i = 0; i < grid.N; ++i)
                diff += std::norm(two_step.coeffs()[i] - one_step.coeffs()[i]);
            diff = std::sqrt(grid.X * diff);
            CHECK(diff <= 1e-12 * one_step.l2());
            CHECK(f.evolved(t1, s).l2() <= f.l2() * (1 + 1e-14));
        }
    }
}
