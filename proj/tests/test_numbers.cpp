#include "fracheat/numbers.hpp"
#include "fracheat/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fracheat;

TEST_CASE("rational parsing round trips")
{
    CHECK(rational_from_string("3/4") == Rational(3, 4));
    CHECK(rational_from_string("-7/2") == Rational(-7, 2));
    CHECK(rational_from_string("5") == Rational(5));
    CHECK(rational_from_string("0.125") == Rational(1, 8));
    CHECK(rational_from_string("-0.5") == Rational(-1, 2));
    CHECK(rational_to_string(Rational(3, 4)) == "3/4");
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(rational_from_string("1/0"), ValidationError);
    CHECK_THROWS_AS(rational_from_string("abc"), ValidationError);
}

TEST_CASE("dyadic arithmetic agrees with rational arithmetic")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> mant(-4096, 4096);
    std::uniform_int_distribution<long> expo(-20, 20);
    for (int i = 0; i < 500; ++i) {
        Dyadic a(mpz_class(mant(rng)), expo(rng));
        Dyadic b(mpz_class(mant(rng)), expo(rng));
        CHECK((a + b).to_rational() == a.to_rational() + b.to_rational());
        CHECK((a - b).to_rational() == a.to_rational() - b.to_rational());
        CHECK((a * b).to_rational() == a.to_rational() * b.to_rational());
        CHECK((a.cmp(b) < 0) == (a.to_rational() < b.to_rational()));
    }
}

TEST_CASE("dyadic conversions")
{
    CHECK(Dyadic::from_rational(Rational(3, 8)).has_value());
    CHECK(!Dyadic::from_rational(Rational(1, 3)).has_value());
    CHECK(Dyadic::from_double(0.375).to_rational() == Rational(3, 8));
    CHECK(Dyadic::from_double(-2.0).to_double() == -2.0);
    CHECK(Dyadic(mpz_class(12), -2).to_rational() == Rational(3));
}

TEST_CASE("rounded gap ratios match mpfr to the grid resolution")
{
    // r_0 = (1/2) exp(-1) rounded to denominator 2^128
    Dyadic r0 = round_scaled_exp(Rational(1, 2), Rational(1), Rational(1, 2), 0, 128);
    double expected = 0.5 * std::exp(-1.0);
    CHECK(std::abs(r0.to_double() - expected) < 1e-16);
    // the grid spacing bounds the rounding error
    Rational err = r0.to_rational() - rational_from_double(expected);
    CHECK(abs(err.get_num().get_d() / err.get_den().get_d()) < 1.0 / std::pow(2.0, 100));

    // deep levels underflow the 128-bit grid and must be rejected
    CHECK_THROWS_AS(round_scaled_exp(Rational(1, 2), Rational(1), Rational(1, 2), 13, 128),
                    NumericalError);
    // but survive at higher precision
    Dyadic deep = round_scaled_exp(Rational(1, 2), Rational(1), Rational(1, 2), 13, 256);
    CHECK(deep.sign() > 0);
}
