#pragma once

// Finite unions of intervals and points on the real line, with exact set
// algebra on the stored endpoints and the absolutely continuous closure.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace weylkit {

struct Interval {
  double a = 0.0;
  double b = 0.0;
  bool closed_left = true;
  bool closed_right = true;

  bool is_point() const { return a == b; }
  double length() const { return b - a; }
  bool contains(double x) const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

class IntervalSet {
 public:
  IntervalSet() = default;

  // Validates and normalizes. Each interval needs a ≤ b; a = b only as a closed
  // point; infinite endpoints must be open. Throws ValidationError otherwise.
  static IntervalSet from_intervals(std::span<const Interval> parts);
  static IntervalSet closed(double a, double b);
  static IntervalSet open(double a, double b);
  static IntervalSet half_open(double a, double b);  // [a, b)
  static IntervalSet point(double x);
  static IntervalSet real_line();

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(double x) const;
  double measure() const;

  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet subtract(const IntervalSet& o) const;
  IntervalSet complement() const;
  IntervalSet closure() const;
  // Drops zero-length components and closes the rest: the set of x whose
  // every neighbourhood meets this set in positive Lebesgue measure.
  IntervalSet closure_ac() const;

  bool is_subset_of(const IntervalSet& o) const { return subtract(o).empty(); }

  std::string to_string() const;
  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  explicit IntervalSet(std::vector<Interval> normalized) : parts_(std::move(normalized)) {}
  std::vector<Interval> parts_;
};

struct AcLemmaReport {
  double leftover_measure = 0.0;  // |A ∖ cl_ac(A)|
  bool leftover_null = false;
  IntervalSet closure_of_union;   // cl_ac(⋃ parts)
  IntervalSet union_of_closures;  // closure(⋃ cl_ac(part))
  bool union_law_holds = false;
  bool passed() const { return leftover_null && union_law_holds; }
};

// Checks |A ∖ cl_ac(A)| = 0 and cl_ac(⋃ parts) = closure(⋃ cl_ac(parts)).
AcLemmaReport verify_ac_lemmas(const IntervalSet& a, std::span<const IntervalSet> parts);

}  // namespace weylkit
