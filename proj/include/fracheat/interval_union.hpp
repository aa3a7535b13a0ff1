#pragma once

#include "fracheat/numbers.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace fracheat {

/// Closed interval [a, b] with exact rational endpoints, a <= b.
struct Interval {
    Rational a;
    Rational b;

    Rational length() const { return b - a; }
};

/// Finite union of disjoint closed intervals with exact endpoints, kept
/// normalized: sorted, pairwise disjoint and non-touching, no zero-length
/// members (touching intervals are merged, degenerate points dropped).
class IntervalUnion {
public:
    IntervalUnion() = default;
    /// Normalizes: sorts, merges overlapping/touching intervals, drops points.
    explicit IntervalUnion(std::vector<Interval> intervals);

    /// Adopts intervals that are already canonical, sorted, disjoint and
    /// non-touching; verified in O(n) comparisons (no sorting, no gcd work).
    static IntervalUnion from_sorted_disjoint(std::vector<Interval> intervals);

    static IntervalUnion from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    const std::vector<Interval>& intervals() const { return iv_; }
    bool empty() const { return iv_.empty(); }
    std::size_t size() const { return iv_.size(); }

    /// Exact Lebesgue measure.
    Rational measure() const;

    /// Smallest interval containing the union; requires non-empty.
    Interval hull() const;

    /// Exact complement within a window that must contain the hull.
    IntervalUnion complement_within(const Interval& window) const;

    IntervalUnion translate(const Rational& t) const;

    /// Exact measure of the union intersected with [lo, hi].
    Rational measure_within(const Rational& lo, const Rational& hi) const;

    friend bool operator==(const IntervalUnion& x, const IntervalUnion& y);

private:
    std::vector<Interval> iv_;
};

/// Prefix-sum index over an IntervalUnion for O(log n) window-measure
/// queries; used by the thickness sweep.
class MeasureIndex {
public:
    explicit MeasureIndex(const IntervalUnion& u);

    /// Exact measure of K ∩ (-inf, t].
    Rational prefix(const Rational& t) const;
    /// Exact measure of K ∩ [lo, hi].
    Rational window(const Rational& lo, const Rational& hi) const;

private:
    const std::vector<Interval>& iv_;
    std::vector<Rational> prefix_; // prefix_[i] = measure of first i intervals
};

} // namespace fracheat
