#pragma once

#include <algorithm>
#include <vector>

#include "lsl/error.hpp"
#include "lsl/rational.hpp"

namespace lsl {

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool degenerate() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of closed intervals. normalize() sorts and merges intervals
// whose interiors overlap or that contain one another; intervals that only
// touch at an endpoint stay separate, so a cover keeps its piece count.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> v) : items_(std::move(v)) {
    for (const auto& i : items_)
      if (i.lo > i.hi) throw ValidationError("interval with lo > hi");
  }

  void add(Interval i) {
    if (i.lo > i.hi) throw ValidationError("interval with lo > hi");
    items_.push_back(std::move(i));
  }

  const std::vector<Interval>& intervals() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  void normalize() {
    std::sort(items_.begin(), items_.end(), [](const Interval& a, const Interval& b) {
      return a.lo < b.lo || (a.lo == b.lo && a.hi > b.hi);
    });
    std::vector<Interval> out;
    for (auto& i : items_) {
      if (!out.empty()) {
        Interval& last = out.back();
        if (last.contains(i)) continue;
        if (i.lo < last.hi || (i.lo == last.hi && (i.degenerate() || last.degenerate()))) {
          last.hi = std::max(last.hi, i.hi);
          continue;
        }
      }
      out.push_back(std::move(i));
    }
    items_ = std::move(out);
  }

  Rational total_length() const {
    Rational s(0);
    for (const auto& i : items_) s += i.length();
    return s;
  }

  bool contains(const Rational& x) const {
    return std::any_of(items_.begin(), items_.end(), [&](const Interval& i) { return i.contains(x); });
  }

  // Interiors pairwise disjoint (touching endpoints allowed).
  bool non_overlapping() const {
    std::vector<Interval> v = items_;
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i].lo < v[i - 1].hi) return false;
    return true;
  }

 private:
  std::vector<Interval> items_;
};

}  // namespace lsl
