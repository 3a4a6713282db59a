#include "weylkit/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "weylkit/errors.hpp"
#include "weylkit/format.hpp"

namespace weylkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The finite endpoints of all inputs cut the line into cells: open gaps
// (p[k-1], p[k]) and the points p[k]. Every input set is constant on each
// cell, so set algebra reduces to boolean algebra on cell memberships.
struct Cells {
  std::vector<double> points;
  std::vector<char> gap_in;    // points.size() + 1 entries
  std::vector<char> point_in;  // points.size() entries
};

std::vector<double> finite_endpoints(std::span<const std::vector<Interval>* const> sets) {
  std::vector<double> p;
  for (const auto* s : sets)
    for (const auto& iv : *s) {
      if (std::isfinite(iv.a)) p.push_back(iv.a);
      if (std::isfinite(iv.b)) p.push_back(iv.b);
    }
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

double gap_left(const std::vector<double>& p, std::size_t k) { return k == 0 ? -kInf : p[k - 1]; }
double gap_right(const std::vector<double>& p, std::size_t k) {
  return k == p.size() ? kInf : p[k];
}

bool covers_gap(const std::vector<Interval>& s, double l, double r) {
  return std::any_of(s.begin(), s.end(),
                     [&](const Interval& iv) { return iv.a <= l && iv.b >= r; });
}

bool contains_point(const std::vector<Interval>& s, double x) {
  return std::any_of(s.begin(), s.end(), [&](const Interval& iv) { return iv.contains(x); });
}

template <class Op>
Cells combine_cells(const std::vector<Interval>& a, const std::vector<Interval>& b, Op op) {
  const std::vector<Interval>* sets[] = {&a, &b};
  Cells c;
  c.points = finite_endpoints(sets);
  const auto& p = c.points;
  c.gap_in.resize(p.size() + 1);
  c.point_in.resize(p.size());
  for (std::size_t k = 0; k <= p.size(); ++k) {
    const double l = gap_left(p, k), r = gap_right(p, k);
    c.gap_in[k] = op(covers_gap(a, l, r), covers_gap(b, l, r));
  }
  for (std::size_t k = 0; k < p.size(); ++k)
    c.point_in[k] = op(contains_point(a, p[k]), contains_point(b, p[k]));
  return c;
}

// Rebuilds maximal runs of member cells: canonical by construction.
std::vector<Interval> build(const Cells& c) {
  const auto& p = c.points;
  const std::size_t ncells = 2 * p.size() + 1;
  std::vector<Interval> out;
  bool in_run = false;
  Interval cur;
  for (std::size_t idx = 0; idx < ncells; ++idx) {
    const bool is_gap = idx % 2 == 0;
    const std::size_t k = idx / 2;
    const bool member = is_gap ? c.gap_in[k] : c.point_in[k];
    if (member && !in_run) {
      in_run = true;
      if (is_gap) {
        cur.a = gap_left(p, k);
        cur.closed_left = false;
      } else {
        cur.a = p[k];
        cur.closed_left = true;
      }
    }
    if (member) {
      if (is_gap) {
        cur.b = gap_right(p, k);
        cur.closed_right = false;
      } else {
        cur.b = p[k];
        cur.closed_right = true;
      }
    } else if (in_run) {
      out.push_back(cur);
      in_run = false;
    }
  }
  if (in_run) out.push_back(cur);
  return out;
}

void validate(const Interval& iv) {
  std::ostringstream os;
  if (std::isnan(iv.a) || std::isnan(iv.b)) {
    os << "interval: NaN endpoint";
  } else if (iv.a > iv.b) {
    os << "interval: a=" << iv.a << " > b=" << iv.b;
  } else if (iv.a == iv.b && !(iv.closed_left && iv.closed_right)) {
    os << "interval: degenerate interval at " << iv.a << " must be a closed point";
  } else if ((std::isinf(iv.a) && iv.closed_left) || (std::isinf(iv.b) && iv.closed_right)) {
    os << "interval: infinite endpoints must be open";
  } else if (iv.a == kInf || iv.b == -kInf) {
    os << "interval: empty interval at infinity";
  } else {
    return;
  }
  throw ValidationError(os.str());
}

}  // namespace

bool Interval::contains(double x) const {
  if (x < a || x > b) return false;
  if (x == a && !closed_left) return false;
  if (x == b && !closed_right) return false;
  return true;
}

IntervalSet IntervalSet::from_intervals(std::span<const Interval> parts) {
  std::vector<Interval> raw(parts.begin(), parts.end());
  for (const auto& iv : raw) validate(iv);
  const std::vector<Interval> none;
  return IntervalSet(build(combine_cells(raw, none, [](bool x, bool) { return x; })));
}

IntervalSet IntervalSet::closed(double a, double b) {
  const Interval iv{a, b, true, true};
  return from_intervals({&iv, 1});
}

IntervalSet IntervalSet::open(double a, double b) {
  if (a == b) return {};
  const Interval iv{a, b, false, false};
  return from_intervals({&iv, 1});
}

IntervalSet IntervalSet::half_open(double a, double b) {
  if (a == b) return {};
  const Interval iv{a, b, true, false};
  return from_intervals({&iv, 1});
}

IntervalSet IntervalSet::point(double x) { return closed(x, x); }

IntervalSet IntervalSet::real_line() { return IntervalSet({{-kInf, kInf, false, false}}); }

bool IntervalSet::contains(double x) const { return contains_point(parts_, x); }

double IntervalSet::measure() const {
  double m = 0.0;
  for (const auto& iv : parts_) m += iv.length();
  return m;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  return IntervalSet(build(combine_cells(parts_, o.parts_, [](bool x, bool y) { return x || y; })));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  return IntervalSet(build(combine_cells(parts_, o.parts_, [](bool x, bool y) { return x && y; })));
}

IntervalSet IntervalSet::subtract(const IntervalSet& o) const {
  return IntervalSet(build(combine_cells(parts_, o.parts_, [](bool x, bool y) { return x && !y; })));
}

IntervalSet IntervalSet::complement() const { return real_line().subtract(*this); }

IntervalSet IntervalSet::closure() const {
  std::vector<Interval> closed_parts;
  closed_parts.reserve(parts_.size());
  for (auto iv : parts_) {
    iv.closed_left = std::isfinite(iv.a);
    iv.closed_right = std::isfinite(iv.b);
    closed_parts.push_back(iv);
  }
  return from_intervals(closed_parts);
}

IntervalSet IntervalSet::closure_ac() const {
  std::vector<Interval> fat;
  for (const auto& iv : parts_)
    if (!iv.is_point()) fat.push_back(iv);
  return IntervalSet(std::move(fat)).closure();
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    const auto& iv = parts_[k];
    if (k) s += " U ";
    if (iv.is_point()) {
      s += "{" + format_double(iv.a) + "}";
      continue;
    }
    s += iv.closed_left ? "[" : "(";
    s += format_double(iv.a) + ", " + format_double(iv.b);
    s += iv.closed_right ? "]" : ")";
  }
  return s;
}

AcLemmaReport verify_ac_lemmas(const IntervalSet& a, std::span<const IntervalSet> parts) {
  AcLemmaReport r;
  r.leftover_measure = a.subtract(a.closure_ac()).measure();
  r.leftover_null = r.leftover_measure == 0.0;

  IntervalSet all;
  IntervalSet closures;
  for (const auto& p : parts) {
    all = all.unite(p);
    closures = closures.unite(p.closure_ac());
  }
  r.closure_of_union = all.closure_ac();
  r.union_of_closures = closures.closure();
  r.union_law_holds = r.closure_of_union == r.union_of_closures;
  return r;
}

}  // namespace weylkit
