#include "weylkit/operator_measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weylkit/errors.hpp"
#include "weylkit/format.hpp"
#include "weylkit/spectral.hpp"

namespace weylkit {

namespace {

void require_psd(const HermitianMatrix& w, std::size_t dim, const std::string& what) {
  if (w.dim() != dim) {
    std::ostringstream os;
    os << what << ": expected dimension " << dim << ", got " << w.dim();
    throw ValidationError(os.str());
  }
  const double floor = -kPsdTol * std::max(1.0, w.matrix().norm_max());
  const double lo = min_eigenvalue(w);
  if (lo < floor) throw ValidationError(what + ": not positive semidefinite (min eigenvalue " +
                                        format_double(lo) + ")");
}

Interval piece_interval(double a, double b) { return {a, b, std::isfinite(a), false}; }

// Merge equal neighbours and trim zero pieces at both ends.
MultiplicityFunctionTable canonical(MultiplicityFunctionTable t) {
  MultiplicityFunctionTable out;
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    if (!out.values.empty() && out.values.back() == t.values[k]) {
      out.breakpoints.back() = t.breakpoints[k + 1];
      continue;
    }
    if (out.breakpoints.empty()) out.breakpoints.push_back(t.breakpoints[k]);
    out.values.push_back(t.values[k]);
    out.breakpoints.push_back(t.breakpoints[k + 1]);
  }
  while (!out.values.empty() && out.values.back() == 0) {
    out.values.pop_back();
    out.breakpoints.pop_back();
  }
  std::size_t lead = 0;
  while (lead < out.values.size() && out.values[lead] == 0) ++lead;
  out.values.erase(out.values.begin(), out.values.begin() + lead);
  out.breakpoints.erase(out.breakpoints.begin(), out.breakpoints.begin() + lead);
  if (out.values.empty()) out.breakpoints.clear();
  return out;
}

int atom_rank(const OperatorMeasure& s, double position, double tol) {
  for (const auto& a : s.atoms())
    if (a.position == position) return static_cast<int>(rank_eps(a.weight.matrix(), tol));
  return 0;
}

// N1 ≤ N2 (or =) on every positive-length cell of the common refinement.
template <class Cmp>
bool compare_tables(const MultiplicityFunctionTable& t1, const MultiplicityFunctionTable& t2,
                    Cmp cmp) {
  std::vector<double> bp = t1.breakpoints;
  bp.insert(bp.end(), t2.breakpoints.begin(), t2.breakpoints.end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const double l = bp[k];
    if (!cmp(t1.value_at(l), t2.value_at(l))) return false;
  }
  return true;
}

}  // namespace

OperatorMeasure::OperatorMeasure(std::size_t dim, std::vector<Atom> atoms,
                                 std::vector<AcPiece> pieces)
    : dim_(dim), atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (!std::isfinite(atoms_[k].position))
      throw ValidationError("measure: atom position must be finite");
    if (k > 0 && !(atoms_[k - 1].position < atoms_[k].position))
      throw ValidationError("measure: atom positions must be strictly increasing");
    require_psd(atoms_[k].weight, dim_, "measure: atom weight");
  }
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const auto& p = pieces_[k];
    if (std::isnan(p.a) || std::isnan(p.b) || !(p.a < p.b) || p.a == HUGE_VAL || p.b == -HUGE_VAL)
      throw ValidationError("measure: ac piece needs a < b");
    if (k > 0 && pieces_[k - 1].b > p.a)
      throw ValidationError("measure: ac pieces must be sorted and disjoint");
    require_psd(p.density, dim_, "measure: ac density");
  }
}

OperatorMeasure OperatorMeasure::atom(double position, HermitianMatrix weight) {
  const std::size_t n = weight.dim();
  return OperatorMeasure(n, {Atom{position, std::move(weight)}}, {});
}

OperatorMeasure OperatorMeasure::density(double a, double b, HermitianMatrix density) {
  const std::size_t n = density.dim();
  return OperatorMeasure(n, {}, {AcPiece{a, b, std::move(density)}});
}

HermitianMatrix OperatorMeasure::evaluate(const IntervalSet& delta) const {
  ComplexMatrix sum(dim_, dim_);
  for (const auto& a : atoms_)
    if (delta.contains(a.position)) sum += a.weight.matrix();
  for (const auto& p : pieces_) {
    const Interval iv = piece_interval(p.a, p.b);
    const double overlap = delta.intersect(IntervalSet::from_intervals({&iv, 1})).measure();
    if (overlap == 0.0) continue;
    if (!std::isfinite(overlap)) {
      if (p.density.matrix().norm_max() == 0.0) continue;
      throw DomainError("measure: infinite mass on an unbounded set");
    }
    sum += p.density.matrix() * Complex{overlap, 0.0};
  }
  return HermitianMatrix::real_part(sum);
}

std::vector<double> OperatorMeasure::atom_support(double tol) const {
  std::vector<double> out;
  for (const auto& a : atoms_)
    if (rank_eps(a.weight.matrix(), tol) > 0) out.push_back(a.position);
  return out;
}

IntervalSet OperatorMeasure::ac_support(double tol) const {
  std::vector<Interval> parts;
  for (const auto& p : pieces_)
    if (rank_eps(p.density.matrix(), tol) > 0) parts.push_back(piece_interval(p.a, p.b));
  return IntervalSet::from_intervals(parts);
}

LebesgueParts lebesgue_decompose(const OperatorMeasure& sigma) {
  return {OperatorMeasure(sigma.dim(), {}, sigma.pieces()),
          OperatorMeasure(sigma.dim(), sigma.atoms(), {})};
}

int MultiplicityFunctionTable::value_at(double t) const {
  for (std::size_t k = 0; k < values.size(); ++k)
    if (breakpoints[k] <= t && t < breakpoints[k + 1]) return values[k];
  return 0;
}

MultiplicityFunctionTable ac_multiplicity(const OperatorMeasure& sigma, double tol) {
  MultiplicityFunctionTable raw;
  for (const auto& p : sigma.pieces()) {
    if (raw.breakpoints.empty()) {
      raw.breakpoints.push_back(p.a);
    } else if (p.a > raw.breakpoints.back()) {
      raw.values.push_back(0);
      raw.breakpoints.push_back(p.a);
    }
    raw.values.push_back(static_cast<int>(rank_eps(p.density.matrix(), tol)));
    raw.breakpoints.push_back(p.b);
  }
  return canonical(std::move(raw));
}

bool is_subordinate(const OperatorMeasure& s1, const OperatorMeasure& s2, double tol) {
  const auto atoms2 = s2.atom_support(tol);
  for (double x : s1.atom_support(tol))
    if (!std::binary_search(atoms2.begin(), atoms2.end(), x)) return false;
  // a.e. inclusion: leftover of positive measure is what matters
  return s1.ac_support(tol).subtract(s2.ac_support(tol)).measure() == 0.0;
}

bool spectrally_subordinate(const OperatorMeasure& s1, const OperatorMeasure& s2, double tol) {
  if (!is_subordinate(s1, s2, tol)) return false;
  for (double x : s1.atom_support(tol))
    if (atom_rank(s1, x, tol) > atom_rank(s2, x, tol)) return false;
  return compare_tables(ac_multiplicity(s1, tol), ac_multiplicity(s2, tol),
                        [](int a, int b) { return a <= b; });
}

bool spectrally_equivalent(const OperatorMeasure& s1, const OperatorMeasure& s2, double tol) {
  return spectrally_subordinate(s1, s2, tol) && spectrally_subordinate(s2, s1, tol);
}

}  // namespace weylkit
