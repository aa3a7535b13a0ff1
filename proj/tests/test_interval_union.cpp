#include "fracheat/interval_union.hpp"
#include "fracheat/errors.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <random>

using namespace fracheat;

namespace {
IntervalUnion make(std::vector<std::pair<Rational, Rational>> ps)
{
    std::vector<Interval> ivs;
    for (auto& [a, b] : ps) ivs.push_back({a, b});
    return IntervalUnion(std::move(ivs));
}
} // namespace

TEST_CASE("normalization merges touching intervals and drops points")
{
    auto u = make({{Rational(1, 2), Rational(1)}, {Rational(0), Rational(1, 2)},
                   {Rational(2), Rational(2)}, {Rational(3), Rational(4)}});
    REQUIRE(u.size() == 2);
    CHECK(u.intervals()[0].a == 0);
    CHECK(u.intervals()[0].b == 1);
    CHECK(u.intervals()[1].a == 3);
    CHECK(u.measure() == 2);
    CHECK_THROWS_AS(make({{Rational(1), Rational(0)}}), ValidationError);
}

TEST_CASE("measure examples")
{
    CHECK(make({{Rational(0), Rational(1)}}).measure() == 1);
    CHECK(make({{Rational(0), Rational(1, 4)}, {Rational(3, 4), Rational(1)}}).measure() ==
          Rational(1, 2));
    CHECK(IntervalUnion().measure() == 0);
}

TEST_CASE("complement within a window")
{
    auto u = make({{Rational(0), Rational(1)}});
    auto c = u.complement_within({Rational(-1), Rational(2)});
    REQUIRE(c.size() == 2);
    CHECK(c.intervals()[0].a == -1);
    CHECK(c.intervals()[0].b == 0);
    CHECK(c.intervals()[1].a == 1);
    CHECK(c.intervals()[1].b == 2);

    auto full = IntervalUnion().complement_within({Rational(0), Rational(1)});
    REQUIRE(full.size() == 1);
    CHECK(full.measure() == 1);

    auto two = make({{Rational(0), Rational(1, 4)}, {Rational(3, 4), Rational(1)}});
    auto c2 = two.complement_within({Rational(-1), Rational(2)});
    REQUIRE(c2.size() == 3);
    CHECK(c2.intervals()[1].a == Rational(1, 4));
    CHECK(c2.intervals()[1].b == Rational(3, 4));
    CHECK(c2.measure() + two.measure() == 3);

    CHECK_THROWS_AS(u.complement_within({Rational(1, 2), Rational(2)}), ValidationError);
}

TEST_CASE("json serialization round trips random unions")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 64);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Interval> ivs;
        for (int i = 0; i < 10; ++i) {
            Rational a = make_rational(num(rng), den(rng));
            Rational w = make_rational(std::abs(num(rng)) + 1, den(rng));
            ivs.push_back({a, a + w});
        }
        IntervalUnion u(std::move(ivs));
        auto back = IntervalUnion::from_json(u.to_json());
        CHECK(back == u);
        CHECK(back.measure() == u.measure());
    }
}

TEST_CASE("window measure queries")
{
    auto u = make({{Rational(0), Rational(1)}, {Rational(2), Rational(4)}});
    MeasureIndex idx(u);
    CHECK(idx.window(Rational(-5), Rational(5)) == 3);
    CHECK(idx.window(Rational(1, 2), Rational(5, 2)) == Rational(1));
    CHECK(idx.window(Rational(3), Rational(3)) == 0);
    CHECK(idx.window(Rational(5), Rational(6)) == 0);
    CHECK(u.measure_within(Rational(-1), Rational(1, 2)) == Rational(1, 2));
}
