#include "fracheat/interval_union.hpp"
#include "fracheat/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace fracheat {

IntervalUnion::IntervalUnion(std::vector<Interval> intervals)
{
    for (auto& iv : intervals) {
        iv.a.canonicalize();
        iv.b.canonicalize();
        if (iv.a > iv.b) throw ValidationError("interval with a > b");
    }
    bool sorted = true;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        if (intervals[i].a < intervals[i - 1].a) {
            sorted = false;
            break;
        }
    }
    if (!sorted)
        std::sort(intervals.begin(), intervals.end(),
                  [](const Interval& x, const Interval& y) { return x.a < y.a; });
    iv_.reserve(intervals.size());
    for (auto& iv : intervals) {
        if (iv.a == iv.b) continue; // drop degenerate points
        if (!iv_.empty() && iv.a <= iv_.back().b) {
            if (iv.b > iv_.back().b) iv_.back().b = std::move(iv.b); // merge touching/overlapping
        } else {
            iv_.push_back(std::move(iv));
        }
    }
}

IntervalUnion IntervalUnion::from_sorted_disjoint(std::vector<Interval> intervals)
{
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].a >= intervals[i].b)
            throw ValidationError("from_sorted_disjoint: degenerate or inverted interval");
        if (i > 0 && intervals[i - 1].b >= intervals[i].a)
            throw ValidationError("from_sorted_disjoint: intervals touch or overlap");
    }
    IntervalUnion u;
    u.iv_ = std::move(intervals);
    return u;
}

IntervalUnion IntervalUnion::from_json(const nlohmann::json& j)
{
    if (!j.is_array()) throw ValidationError("interval union JSON must be an array");
    std::vector<Interval> ivs;
    ivs.reserve(j.size());
    for (const auto& q : j) {
        if (!q.is_array() || q.size() != 4)
            throw ValidationError("interval union entries must be quadruples of decimal strings");
        auto num = [&](std::size_t i) -> mpz_class {
            if (!q[i].is_string()) throw ValidationError("interval endpoints must be decimal strings");
            return mpz_class(q[i].get<std::string>(), 10);
        };
        mpz_class da = num(1), db = num(3);
        if (da == 0 || db == 0) throw ValidationError("zero denominator in interval union JSON");
        Rational a(num(0), da), b(num(2), db);
        a.canonicalize();
        b.canonicalize();
        ivs.push_back({a, b});
    }
    return IntervalUnion(std::move(ivs));
}

nlohmann::json IntervalUnion::to_json() const
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto& iv : iv_) {
        j.push_back({iv.a.get_num().get_str(), iv.a.get_den().get_str(),
                     iv.b.get_num().get_str(), iv.b.get_den().get_str()});
    }
    return j;
}

Rational IntervalUnion::measure() const
{
    Rational m(0), tmp;
    for (const auto& iv : iv_) {
        mpq_sub(tmp.get_mpq_t(), iv.b.get_mpq_t(), iv.a.get_mpq_t());
        mpq_add(m.get_mpq_t(), m.get_mpq_t(), tmp.get_mpq_t());
    }
    return m;
}

Interval IntervalUnion::hull() const
{
    if (iv_.empty()) throw ValidationError("hull of empty interval union");
    return {iv_.front().a, iv_.back().b};
}

IntervalUnion IntervalUnion::complement_within(const Interval& window) const
{
    if (window.a > window.b) throw ValidationError("invalid window");
    if (!iv_.empty()) {
        auto h = hull();
        if (window.a > h.a || window.b < h.b)
            throw ValidationError("complement window does not contain the set");
    }
    std::vector<Interval> out;
    Rational cursor = window.a;
    for (const auto& iv : iv_) {
        if (iv.a > cursor) out.push_back({cursor, iv.a});
        cursor = iv.b;
    }
    if (cursor < window.b) out.push_back({cursor, window.b});
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::translate(const Rational& t) const
{
    IntervalUnion out;
    out.iv_ = iv_;
    for (auto& iv : out.iv_) {
        iv.a += t;
        iv.b += t;
    }
    return out;
}

Rational IntervalUnion::measure_within(const Rational& lo, const Rational& hi) const
{
    return MeasureIndex(*this).window(lo, hi);
}

bool operator==(const IntervalUnion& x, const IntervalUnion& y)
{
    if (x.iv_.size() != y.iv_.size()) return false;
    for (std::size_t i = 0; i < x.iv_.size(); ++i)
        if (x.iv_[i].a != y.iv_[i].a || x.iv_[i].b != y.iv_[i].b) return false;
    return true;
}

MeasureIndex::MeasureIndex(const IntervalUnion& u) : iv_(u.intervals())
{
    prefix_.reserve(iv_.size() + 1);
    prefix_.emplace_back(0);
    for (const auto& iv : iv_) prefix_.push_back(prefix_.back() + (iv.b - iv.a));
}

Rational MeasureIndex::prefix(const Rational& t) const
{
    // first interval with a > t
    std::size_t lo = 0, hi = iv_.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (iv_[mid].a > t) hi = mid;
        else lo = mid + 1;
    }
    if (lo == 0) return Rational(0);
    const Interval& last = iv_[lo - 1];
    Rational m = prefix_[lo - 1];
    m += (t >= last.b) ? (last.b - last.a) : (t - last.a);
    return m;
}

Rational MeasureIndex::window(const Rational& lo, const Rational& hi) const
{
    if (hi <= lo) return Rational(0);
    return prefix(hi) - prefix(lo);
}

} // namespace fracheat
