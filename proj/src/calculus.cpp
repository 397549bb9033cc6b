#include "hmorph/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace hmorph {

Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2}; }

Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

Jet2 operator*(Complex c, const Jet2& a) { return {c * a.value, c * a.d1, c * a.d2}; }

Jet2 divide(const Jet2& a, const Jet2& b, double guard) {
  if (!(std::abs(b.value) >= guard)) {
    throw PoleError("quotient denominator " + std::to_string(std::abs(b.value)) + " is below the pole guard");
  }
  const Complex q0 = a.value / b.value;
  const Complex q1 = (a.d1 - q0 * b.d1) / b.value;
  const Complex q2 = (a.d2 - 2.0 * q1 * b.d1 - q0 * b.d2) / b.value;
  return {q0, q1, q2};
}

struct ScalarField::Node {
  FieldKind kind = FieldKind::Constant;
  Complex scalar{0.0, 0.0};
  std::vector<TraceTerm> terms;
  ComplexMatrix ambient;
  std::vector<ScalarField> children;
  int size = 0;
};

namespace {

int merged_size(const std::vector<ScalarField>& fields) {
  int size = 0;
  for (const auto& f : fields) {
    const int s = f.ambient_size();
    if (s == 0) continue;
    if (size != 0 && s != size) throw std::invalid_argument("fields live on different ambient sizes");
    size = s;
  }
  return size;
}

}  // namespace

int block_size(Block b, int ambient_size) {
  if (b == Block::Full) return ambient_size;
  if (ambient_size % 2 != 0) throw std::invalid_argument("quadrant blocks need an even ambient size");
  return ambient_size / 2;
}

namespace {

std::pair<int, int> block_offset(Block b, int ambient_size) {
  const int h = ambient_size / 2;
  switch (b) {
    case Block::Full: return {0, 0};
    case Block::TopLeft: return {0, 0};
    case Block::TopRight: return {0, h};
    case Block::BottomLeft: return {h, 0};
    case Block::BottomRight: return {h, h};
  }
  return {0, 0};
}

}  // namespace

ScalarField::ScalarField() : ScalarField(constant(0.0)) {}

ScalarField::ScalarField(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ScalarField ScalarField::constant(Complex c) {
  auto n = std::make_shared<Node>();
  n->kind = FieldKind::Constant;
  n->scalar = c;
  return ScalarField(std::move(n));
}

ScalarField ScalarField::trace_form(std::vector<TraceTerm> terms, int ambient_size) {
  if (ambient_size < 1) throw std::invalid_argument("trace_form: ambient size must be positive");
  auto n = std::make_shared<Node>();
  n->kind = FieldKind::TraceForm;
  n->size = ambient_size;
  n->ambient = ComplexMatrix::Zero(ambient_size, ambient_size);
  for (const auto& t : terms) {
    const int bs = block_size(t.block, ambient_size);
    if (t.coefficient.rows() != bs || t.coefficient.cols() != bs) {
      throw std::invalid_argument("trace_form: coefficient is " + std::to_string(t.coefficient.rows()) + "x" +
                                  std::to_string(t.coefficient.cols()) + " but block '" + block_name(t.block) +
                                  "' is " + std::to_string(bs) + "x" + std::to_string(bs));
    }
    const auto [r0, c0] = block_offset(t.block, ambient_size);
    n->ambient.block(r0, c0, bs, bs) += t.coefficient;
  }
  n->terms = std::move(terms);
  return ScalarField(std::move(n));
}

ScalarField ScalarField::sum(std::vector<ScalarField> terms) {
  if (terms.empty()) return constant(0.0);
  if (terms.size() == 1) return terms.front();
  auto n = std::make_shared<Node>();
  n->kind = FieldKind::Sum;
  n->size = merged_size(terms);
  n->children = std::move(terms);
  return ScalarField(std::move(n));
}

ScalarField ScalarField::product(std::vector<ScalarField> factors) {
  if (factors.empty()) return constant(1.0);
  if (factors.size() == 1) return factors.front();
  auto n = std::make_shared<Node>();
  n->kind = FieldKind::Product;
  n->size = merged_size(factors);
  n->children = std::move(factors);
  return ScalarField(std::move(n));
}

ScalarField ScalarField::scale(Complex c, const ScalarField& f) {
  auto n = std::make_shared<Node>();
  n->kind = FieldKind::Scale;
  n->scalar = c;
  n->size = f.ambient_size();
  n->children = {f};
  return ScalarField(std::move(n));
}

ScalarField ScalarField::quotient(const ScalarField& num, const ScalarField& den) {
  if (den.kind() == FieldKind::Constant && den.scalar() == Complex(0.0, 0.0)) {
    throw std::invalid_argument("quotient: denominator is the zero field");
  }
  auto n = std::make_shared<Node>();
  n->kind = FieldKind::Quotient;
  n->children = {num, den};
  n->size = merged_size(n->children);
  return ScalarField(std::move(n));
}

FieldKind ScalarField::kind() const { return node_->kind; }
Complex ScalarField::scalar() const { return node_->scalar; }
const std::vector<TraceTerm>& ScalarField::terms() const { return node_->terms; }
const std::vector<ScalarField>& ScalarField::children() const { return node_->children; }
const ComplexMatrix& ScalarField::ambient_coefficient() const { return node_->ambient; }
int ScalarField::ambient_size() const { return node_->size; }

std::size_t ScalarField::node_count() const {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->children) stack.push_back(c.node_.get());
  }
  return seen.size();
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) { return ScalarField::sum({a, b}); }
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField::sum({a, ScalarField::scale(-1.0, b)});
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) { return ScalarField::product({a, b}); }
ScalarField operator*(Complex c, const ScalarField& a) { return ScalarField::scale(c, a); }
ScalarField operator/(const ScalarField& a, const ScalarField& b) { return ScalarField::quotient(a, b); }

// ---------------------------------------------------------------------------

FieldProgram::FieldProgram(const ScalarField& f) : ambient_size_(f.ambient_size()) {
  keep_alive_.push_back(f);
  std::unordered_map<const ScalarField::Node*, int> index;
  // Iterative post-order so deep product chains do not overflow the stack.
  struct Frame {
    const ScalarField::Node* node;
    std::size_t next;
  };
  std::vector<Frame> stack{{f.node_.get(), 0}};
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (index.count(fr.node)) {
      stack.pop_back();
      continue;
    }
    if (fr.next < fr.node->children.size()) {
      const auto* child = fr.node->children[fr.next++].node_.get();
      if (!index.count(child)) stack.push_back({child, 0});
      continue;
    }
    Op op{fr.node->kind, fr.node->scalar, &fr.node->ambient, {}};
    for (const auto& c : fr.node->children) op.args.push_back(index.at(c.node_.get()));
    index.emplace(fr.node, static_cast<int>(ops_.size()));
    ops_.push_back(std::move(op));
    stack.pop_back();
  }
}

namespace {

Complex frobenius(const ComplexMatrix& c, const ComplexMatrix& g) { return c.cwiseProduct(g).sum(); }

void check_size(int expected, const ComplexMatrix& g) {
  if (expected != 0 && (g.rows() != expected || g.cols() != expected)) {
    throw std::invalid_argument("field expects " + std::to_string(expected) + "x" + std::to_string(expected) +
                                " matrices, got " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
  }
}

}  // namespace

Complex FieldProgram::value(const ComplexMatrix& g, double guard) const {
  check_size(ambient_size_, g);
  std::vector<Complex> v(ops_.size());
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    const Op& op = ops_[k];
    switch (op.kind) {
      case FieldKind::Constant: v[k] = op.scalar; break;
      case FieldKind::TraceForm: v[k] = frobenius(*op.coefficient, g); break;
      case FieldKind::Sum: {
        Complex s{0.0, 0.0};
        for (int a : op.args) s += v[a];
        v[k] = s;
        break;
      }
      case FieldKind::Product: {
        Complex s{1.0, 0.0};
        for (int a : op.args) s *= v[a];
        v[k] = s;
        break;
      }
      case FieldKind::Scale: v[k] = op.scalar * v[op.args[0]]; break;
      case FieldKind::Quotient:
        if (!(std::abs(v[op.args[1]]) >= guard)) throw PoleError("quotient denominator is below the pole guard");
        v[k] = v[op.args[0]] / v[op.args[1]];
        break;
    }
  }
  return v.back();
}

Jet2 FieldProgram::jet(const ComplexMatrix& g, const ComplexMatrix& gz, const ComplexMatrix& gzz,
                       double guard) const {
  check_size(ambient_size_, g);
  std::vector<Jet2> v(ops_.size());
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    const Op& op = ops_[k];
    switch (op.kind) {
      case FieldKind::Constant: v[k] = {op.scalar, 0.0, 0.0}; break;
      case FieldKind::TraceForm:
        v[k] = {frobenius(*op.coefficient, g), frobenius(*op.coefficient, gz), frobenius(*op.coefficient, gzz)};
        break;
      case FieldKind::Sum: {
        Jet2 s;
        for (int a : op.args) s = s + v[a];
        v[k] = s;
        break;
      }
      case FieldKind::Product: {
        Jet2 s{1.0, 0.0, 0.0};
        for (int a : op.args) s = s * v[a];
        v[k] = s;
        break;
      }
      case FieldKind::Scale: v[k] = op.scalar * v[op.args[0]]; break;
      case FieldKind::Quotient: v[k] = divide(v[op.args[0]], v[op.args[1]], guard); break;
    }
  }
  return v.back();
}

Complex evaluate(const ScalarField& f, const ComplexMatrix& g, double guard) {
  return FieldProgram(f).value(g, guard);
}

Jet2 jet_eval(const ScalarField& f, const GroupPoint& p, const ComplexMatrix& z, double guard) {
  if (z.rows() != p.matrix.rows() || z.cols() != p.matrix.cols()) {
    throw std::invalid_argument("jet_eval: direction size does not match the point");
  }
  const ComplexMatrix gz = p.matrix * z;
  const ComplexMatrix gzz = gz * z;
  return FieldProgram(f).jet(p.matrix, gz, gzz, guard);
}

std::vector<Jet2> basis_jets(const ScalarField& f, const GroupPoint& p, const SignedBasis& basis, double guard) {
  const FieldProgram prog(f);
  std::vector<Jet2> out;
  out.reserve(basis.size());
  for (const auto& z : basis.elements) {
    const ComplexMatrix gz = p.matrix * z;
    const ComplexMatrix gzz = gz * z;
    out.push_back(prog.jet(p.matrix, gz, gzz, guard));
  }
  return out;
}

Complex tension_from(const std::vector<Jet2>& jets, const std::vector<int>& signs) {
  if (jets.size() != signs.size()) throw std::invalid_argument("tension_from: jets and signs differ in length");
  Complex s{0.0, 0.0};
  for (std::size_t k = 0; k < jets.size(); ++k) s += static_cast<double>(signs[k]) * jets[k].d2;
  return s;
}

Complex kappa_from(const std::vector<Jet2>& a, const std::vector<Jet2>& b, const std::vector<int>& signs) {
  if (a.size() != signs.size() || b.size() != signs.size()) {
    throw std::invalid_argument("kappa_from: jets and signs differ in length");
  }
  Complex s{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<double>(signs[k]) * (a[k].d1 * b[k].d1);
  return s;
}

double tension_scale(const std::vector<Jet2>& jets) {
  double s = 0.0;
  for (const auto& j : jets) s += std::abs(j.d2);
  return s;
}

double kappa_scale(const std::vector<Jet2>& a, const std::vector<Jet2>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("kappa_scale: jet lists differ in length");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k].d1) * std::abs(b[k].d1);
  return s;
}

double scaled_residual(Complex lhs, Complex rhs, double scale) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(rhs), scale});
}

Complex tension(const ScalarField& f, const GroupPoint& p, const SignedBasis& basis, double guard) {
  return tension_from(basis_jets(f, p, basis, guard), basis.signs);
}

Complex kappa(const ScalarField& f, const ScalarField& h, const GroupPoint& p, const SignedBasis& basis,
              double guard) {
  return kappa_from(basis_jets(f, p, basis, guard), basis_jets(h, p, basis, guard), basis.signs);
}

Jet2 fd_oracle(const ScalarField& f, const GroupPoint& p, const ComplexMatrix& z, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_oracle: step must be positive");
  const FieldProgram prog(f);
  const Complex f0 = prog.value(p.matrix);
  const Complex fp = prog.value(p.matrix * matrix_exp(h * z));
  const Complex fm = prog.value(p.matrix * matrix_exp(-h * z));
  return {f0, (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
}

double relative_residual(Complex lhs, Complex rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)); }

ScalarField coordinate_field(const GroupDescriptor& d, Block block, int i, int j) {
  const int size = d.matrix_size();
  const int bs = block_size(block, size);
  if (i < 1 || i > bs || j < 1 || j > bs) {
    throw std::out_of_range("coordinate index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside a block of size " + std::to_string(bs));
  }
  return ScalarField::trace_form({TraceTerm{unit_matrix(bs, i, j), block}}, size);
}

ScalarField coordinate_field(const GroupDescriptor& d, std::string_view name, int i, int j) {
  return coordinate_field(d, coordinate_block(d, name), i, j);
}

}  // namespace hmorph
