#include "weylkit/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weylkit/errors.hpp"

namespace weylkit {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kInvertTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got == want) return;
  std::ostringstream os;
  os << what << ": expected dimension " << want << ", got " << got;
  throw ValidationError(os.str());
}

void require_psd(const HermitianMatrix& h, const char* what) {
  if (min_eigenvalue(h) < -kPsdTol * std::max(1.0, h.matrix().norm_max()))
    throw ValidationError(std::string(what) + " must be positive semidefinite");
}

struct QShift {
  double re;  // Re √(i − λ)
  double im;  // Im √(i − λ)
};

// Cancellation-free closed forms of √(i − λ) for λ ≥ 0.
QShift sqrt_i_minus(double lambda) {
  const double s = lambda + std::hypot(1.0, lambda);
  return {1.0 / std::sqrt(2.0 * s), std::sqrt(s / 2.0)};
}

// Scalar leaf value at one eigenvalue; sgn = sign(Im z).
Complex leaf_value(NodeKind kind, double lambda, Complex z, double sgn) {
  const Complex root = std::sqrt(z - lambda);
  switch (kind) {
    case NodeKind::kSqrt:
      return sgn * kI * root;
    case NodeKind::kRegularizedSqrt: {
      const QShift q = sqrt_i_minus(lambda);
      return (sgn * kI * root + q.im) / q.re;
    }
    case NodeKind::kKreinSL:
      return (sgn * kI * root - std::sqrt(lambda)) / z;
    case NodeKind::kNeumannSL:
      return sgn * kI / root;
    default:
      break;
  }
  throw std::logic_error("leaf_value: not a square-root leaf");
}

// G(t) = log(t − z) − ½ log(1 + t²), with its limits at ±∞.
Complex piece_primitive(double t, Complex z) {
  if (t == HUGE_VAL) return 0.0;
  if (t == -HUGE_VAL) return Complex{0.0, z.imag() > 0 ? -M_PI : M_PI};
  return std::log(Complex{t, 0.0} - z) - 0.5 * std::log1p(t * t);
}

ComplexMatrix eval_integral(const IntegralModel& m, Complex z) {
  if (z.imag() == 0.0) throw DomainError("evaluate: Im z must be nonzero");
  ComplexMatrix out = m.c0.matrix() + m.c1.matrix() * z;
  for (const auto& a : m.sigma.atoms()) {
    const double p = a.position;
    out += a.weight.matrix() * (1.0 / (p - z) - p / (1.0 + p * p));
  }
  for (const auto& piece : m.sigma.pieces())
    out += piece.density.matrix() * (piece_primitive(piece.b, z) - piece_primitive(piece.a, z));
  return out;
}

ComplexMatrix eval_sqrt_family(const SqrtFamilyModel& m, Complex z) {
  if (z.imag() == 0.0) {
    if (m.kind == NodeKind::kKreinSL && z.real() == 0.0)
      throw PoleError("evaluate: Krein model has a pole at z = 0");
    throw DomainError("evaluate: Im z must be nonzero");
  }
  const double sgn = z.imag() > 0 ? 1.0 : -1.0;
  std::vector<Complex> values;
  values.reserve(m.spectrum.dim());
  for (double lambda : m.spectrum.eigenvalues)
    values.push_back(leaf_value(m.kind, std::max(lambda, 0.0), z, sgn));
  return m.spectrum.synthesize(values);
}

ComplexMatrix eval_node(const NevanlinnaNode& node, Complex z) {
  return std::visit(
      Overloaded{
          [&](const IntegralModel& m) { return eval_integral(m, z); },
          [&](const SqrtFamilyModel& m) { return eval_sqrt_family(m, z); },
          [&](const KreinTransformNode& m) {
            return inverse(m.b.matrix() - m.inner(z), 1e12);
          },
          [&](const ConjugationNode& m) {
            return m.r.adjoint() * m.inner(z) * m.r + m.r0.matrix();
          },
          [&](const SandwichNode& m) { return m.d.adjoint() * m.inner(z) * m.d; },
          [&](const DirectSumNode& m) {
            std::vector<ComplexMatrix> blocks;
            blocks.reserve(m.terms.size());
            for (const auto& t : m.terms) blocks.push_back(t(z));
            return block_diagonal(blocks);
          },
      },
      node.payload);
}

void collect_singular(const NevanlinnaNode& node, std::vector<double>& out) {
  std::visit(Overloaded{
                 [&](const IntegralModel& m) {
                   for (const auto& a : m.sigma.atoms()) out.push_back(a.position);
                   for (const auto& p : m.sigma.pieces()) {
                     if (std::isfinite(p.a)) out.push_back(p.a);
                     if (std::isfinite(p.b)) out.push_back(p.b);
                   }
                 },
                 [&](const SqrtFamilyModel& m) {
                   for (double l : m.spectrum.eigenvalues) out.push_back(std::max(l, 0.0));
                   if (m.kind == NodeKind::kKreinSL) out.push_back(0.0);
                 },
                 [&](const KreinTransformNode& m) { collect_singular(m.inner.node(), out); },
                 [&](const ConjugationNode& m) { collect_singular(m.inner.node(), out); },
                 [&](const SandwichNode& m) { collect_singular(m.inner.node(), out); },
                 [&](const DirectSumNode& m) {
                   for (const auto& t : m.terms) collect_singular(t.node(), out);
                 },
             },
             node.payload);
}

}  // namespace

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::kIntegral: return "integral";
    case NodeKind::kSqrt: return "sqrt";
    case NodeKind::kRegularizedSqrt: return "reg_sqrt";
    case NodeKind::kKreinSL: return "krein_sl";
    case NodeKind::kNeumannSL: return "neumann_sl";
    case NodeKind::kKreinTransform: return "krein";
    case NodeKind::kConjugation: return "conj";
    case NodeKind::kSandwich: return "sandwich";
    case NodeKind::kDirectSum: return "sum";
  }
  return "unknown";
}

Complex sqrt_from_above(double x) {
  return x >= 0.0 ? Complex{std::sqrt(x), 0.0} : Complex{0.0, std::sqrt(-x)};
}

NevanlinnaFunction NevanlinnaFunction::integral(HermitianMatrix c0, HermitianMatrix c1,
                                                OperatorMeasure sigma) {
  const std::size_t n = sigma.dim();
  require_dim(c0.dim(), n, "integral model C0");
  require_dim(c1.dim(), n, "integral model C1");
  require_psd(c1, "integral model C1");
  auto node = std::make_shared<NevanlinnaNode>();
  node->dim = n;
  node->payload = IntegralModel{std::move(c0), std::move(c1), std::move(sigma)};
  return NevanlinnaFunction(std::move(node));
}

NevanlinnaFunction NevanlinnaFunction::sqrt_family(NodeKind kind, HermitianMatrix t) {
  require_psd(t, "model matrix T");
  auto spectrum = eigh(t);
  auto node = std::make_shared<NevanlinnaNode>();
  node->dim = t.dim();
  node->payload = SqrtFamilyModel{kind, std::move(t), std::move(spectrum)};
  return NevanlinnaFunction(std::move(node));
}

NevanlinnaFunction NevanlinnaFunction::sqrt_model(HermitianMatrix t) {
  return sqrt_family(NodeKind::kSqrt, std::move(t));
}
NevanlinnaFunction NevanlinnaFunction::regularized_sqrt(HermitianMatrix t) {
  return sqrt_family(NodeKind::kRegularizedSqrt, std::move(t));
}
NevanlinnaFunction NevanlinnaFunction::krein_sl(HermitianMatrix t) {
  return sqrt_family(NodeKind::kKreinSL, std::move(t));
}
NevanlinnaFunction NevanlinnaFunction::neumann_sl(HermitianMatrix t) {
  return sqrt_family(NodeKind::kNeumannSL, std::move(t));
}

NevanlinnaFunction NevanlinnaFunction::krein_transform(HermitianMatrix b, NevanlinnaFunction inner) {
  require_dim(b.dim(), inner.dim(), "krein transform B");
  if (const auto* m = std::get_if<IntegralModel>(&inner.node().payload)) {
    ComplexMatrix mass = m->c1.matrix();
    for (const auto& a : m->sigma.atoms()) mass += a.weight.matrix();
    for (const auto& p : m->sigma.pieces()) mass += p.density.matrix();
    if (rank_eps(mass, kDefaultRankTol) < inner.dim())
      throw NotStrictError("krein transform: inner function is not strict");
  }
  auto node = std::make_shared<NevanlinnaNode>();
  node->dim = inner.dim();
  node->payload = KreinTransformNode{std::move(b), std::move(inner)};
  return NevanlinnaFunction(std::move(node));
}

NevanlinnaFunction NevanlinnaFunction::conjugation(ComplexMatrix r, HermitianMatrix r0,
                                                   NevanlinnaFunction inner) {
  const std::size_t n = inner.dim();
  if (r.rows() != n || r.cols() != n)
    throw ValidationError("conjugation: R must be square of the inner dimension");
  require_dim(r0.dim(), n, "conjugation R0");
  if (rank_eps(r, kInvertTol) < n) throw ValidationError("conjugation: R is not invertible");
  auto node = std::make_shared<NevanlinnaNode>();
  node->dim = n;
  node->payload = ConjugationNode{std::move(r), std::move(r0), std::move(inner)};
  return NevanlinnaFunction(std::move(node));
}

NevanlinnaFunction NevanlinnaFunction::sandwich(ComplexMatrix d, NevanlinnaFunction inner) {
  require_dim(d.rows(), inner.dim(), "sandwich D rows");
  if (d.cols() > d.rows() || rank_eps(d, kInvertTol) < d.cols())
    throw ValidationError("invalid sandwich: D has a nontrivial kernel");
  auto node = std::make_shared<NevanlinnaNode>();
  node->dim = d.cols();
  node->payload = SandwichNode{std::move(d), std::move(inner)};
  return NevanlinnaFunction(std::move(node));
}

NevanlinnaFunction NevanlinnaFunction::direct_sum(std::vector<NevanlinnaFunction> terms) {
  if (terms.empty()) throw ValidationError("direct sum: needs at least one term");
  auto node = std::make_shared<NevanlinnaNode>();
  for (const auto& t : terms) node->dim += t.dim();
  node->payload = DirectSumNode{std::move(terms)};
  return NevanlinnaFunction(std::move(node));
}

std::size_t NevanlinnaFunction::dim() const { return node_->dim; }

NodeKind NevanlinnaFunction::kind() const {
  return std::visit(Overloaded{
                        [](const IntegralModel&) { return NodeKind::kIntegral; },
                        [](const SqrtFamilyModel& m) { return m.kind; },
                        [](const KreinTransformNode&) { return NodeKind::kKreinTransform; },
                        [](const ConjugationNode&) { return NodeKind::kConjugation; },
                        [](const SandwichNode&) { return NodeKind::kSandwich; },
                        [](const DirectSumNode&) { return NodeKind::kDirectSum; },
                    },
                    node_->payload);
}

ComplexMatrix NevanlinnaFunction::operator()(Complex z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("evaluate: z must be finite");
  return eval_node(*node_, z);
}

std::vector<double> NevanlinnaFunction::singular_points() const {
  std::vector<double> out;
  collect_singular(*node_, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double symmetry_check(const NevanlinnaFunction& f, Complex z) {
  return (f(z) - f(std::conj(z)).adjoint()).norm_fro();
}

NevanlinnaFunction sandwich(const NevanlinnaFunction& f, const ComplexMatrix& d) {
  if (!d.is_square() || rank_eps(d, kInvertTol) < d.rows())
    throw ValidationError("invalid sandwich: D must have trivial kernel and cokernel");
  return NevanlinnaFunction::sandwich(d, f);
}

std::optional<ComplexMatrix> closed_form_boundary(const NevanlinnaFunction& f, double t) {
  const auto* m = std::get_if<SqrtFamilyModel>(&f.node().payload);
  if (m == nullptr || !std::isfinite(t)) return std::nullopt;
  std::vector<Complex> values;
  for (double raw : m->spectrum.eigenvalues) {
    const double lambda = std::max(raw, 0.0);
    const Complex root = sqrt_from_above(t - lambda);
    switch (m->kind) {
      case NodeKind::kSqrt:
        values.push_back(kI * root);
        break;
      case NodeKind::kRegularizedSqrt: {
        const QShift q = sqrt_i_minus(lambda);
        values.push_back((kI * root + q.im) / q.re);
        break;
      }
      case NodeKind::kKreinSL:
        if (t == 0.0) return std::nullopt;
        values.push_back((kI * root - std::sqrt(lambda)) / t);
        break;
      case NodeKind::kNeumannSL:
        if (t == lambda) return std::nullopt;
        values.push_back(kI / root);
        break;
      default:
        return std::nullopt;
    }
  }
  return m->spectrum.synthesize(values);
}

}  // namespace weylkit
