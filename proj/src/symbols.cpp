#include "gsys/symbols.hpp"

#include <algorithm>
#include <sstream>

#include "gsys/error.hpp"

namespace gsys {

// ---------------------------------------------------------------- XiPolynomial

XiPolynomial::XiPolynomial(int dimension) : dimension_(dimension) {
  if (dimension <= 0) throw PreconditionError("symbol dimension must be positive");
}

XiPolynomial XiPolynomial::from_function(const PolyFunction& f) {
  XiPolynomial p(f.dimension());
  p.add_term(MultiIndex(f.dimension(), 0), f);
  return p;
}

XiPolynomial XiPolynomial::term(const MultiIndex& alpha, const PolyFunction& coefficient) {
  XiPolynomial p(coefficient.dimension());
  p.add_term(alpha, coefficient);
  return p;
}

XiPolynomial XiPolynomial::monomial(int dimension, const MultiIndex& alpha, const MultiIndex& beta,
                                    const GaussianRational& c) {
  return term(alpha, PolyFunction::monomial(dimension, beta, c));
}

int XiPolynomial::xi_degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

int XiPolynomial::x_degree() const {
  int deg = -1;
  for (const auto& [alpha, f] : terms_) deg = std::max(deg, f.degree());
  return deg;
}

PolyFunction XiPolynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? PolyFunction(dimension_) : it->second;
}

void XiPolynomial::add_term(const MultiIndex& alpha, const PolyFunction& f) {
  require_same_dimension(dimension_, f.dimension(), "symbol term");
  if (static_cast<int>(alpha.size()) != dimension_) throw MismatchError("xi exponent length mismatch");
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

XiPolynomial& XiPolynomial::operator+=(const XiPolynomial& o) {
  require_same_dimension(dimension_, o.dimension_, "symbol sum");
  for (const auto& [alpha, f] : o.terms_) add_term(alpha, f);
  return *this;
}

XiPolynomial& XiPolynomial::operator-=(const XiPolynomial& o) {
  require_same_dimension(dimension_, o.dimension_, "symbol difference");
  for (const auto& [alpha, f] : o.terms_) add_term(alpha, -f);
  return *this;
}

XiPolynomial& XiPolynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, f] : terms_) f *= c;
  return *this;
}

XiPolynomial operator*(const XiPolynomial& a, const XiPolynomial& b) {
  require_same_dimension(a.dimension_, b.dimension_, "symbol product");
  XiPolynomial out(a.dimension_);
  MultiIndex gamma(a.dimension_);
  for (const auto& [aa, fa] : a.terms_) {
    for (const auto& [ab, fb] : b.terms_) {
      for (int j = 0; j < a.dimension_; ++j) gamma[j] = aa[j] + ab[j];
      out.add_term(gamma, fa * fb);
    }
  }
  return out;
}

XiPolynomial operator*(const PolyFunction& f, const XiPolynomial& a) {
  require_same_dimension(f.dimension(), a.dimension_, "symbol scaling");
  XiPolynomial out(a.dimension_);
  for (const auto& [alpha, g] : a.terms_) out.add_term(alpha, f * g);
  return out;
}

std::string XiPolynomial::to_display() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, f] : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool constant_alpha = total_degree(alpha) == 0;
    if (constant_alpha) {
      os << f.to_display();
      continue;
    }
    if (!(f == PolyFunction::constant(dimension_, 1))) os << "(" << f.to_display() << ")*";
    bool star = false;
    for (int j = 0; j < dimension_; ++j) {
      if (alpha[j] == 0) continue;
      if (star) os << "*";
      star = true;
      os << "xi";
      if (dimension_ > 1) os << (j + 1);
      if (alpha[j] > 1) os << "^" << alpha[j];
    }
  }
  return os.str();
}

XiPolynomial xi_partial(const XiPolynomial& p, int axis) {
  if (axis < 0 || axis >= p.dimension()) throw PreconditionError("xi derivative axis out of range");
  XiPolynomial out(p.dimension());
  for (const auto& [alpha, f] : p.terms()) {
    if (alpha[axis] == 0) continue;
    MultiIndex a = alpha;
    a[axis] -= 1;
    out.add_term(a, f * GaussianRational(alpha[axis]));
  }
  return out;
}

XiPolynomial x_partial(const XiPolynomial& p, int axis) {
  XiPolynomial out(p.dimension());
  for (const auto& [alpha, f] : p.terms()) out.add_term(alpha, poly_partial(f, axis));
  return out;
}

XiPolynomial pull_back_coefficients(const XiPolynomial& p, const AffineDiffeo& phi) {
  require_same_dimension(p.dimension(), phi.dimension(), "pull_back_coefficients");
  if (phi.is_identity()) return p;
  XiPolynomial out(p.dimension());
  for (const auto& [alpha, f] : p.terms()) out.add_term(alpha, poly_compose_affine(f, phi));
  return out;
}

XiPolynomial xi_linear_substitute(const XiPolynomial& p, const Matrix& m) {
  const int d = p.dimension();
  if (m.rows() != static_cast<std::size_t>(d) || m.cols() != static_cast<std::size_t>(d)) {
    throw MismatchError("xi substitution matrix shape mismatch");
  }
  if (m == Matrix::identity(d)) return p;
  const Matrix mt = m.transpose();
  XiPolynomial out(d);
  for (const auto& [alpha, f] : p.terms()) {
    // xi^alpha as a polynomial in the xi variables, then xi -> M^T xi.
    const PolyFunction image = substitute_linear(PolyFunction::monomial(d, alpha), mt);
    for (const auto& [gamma, c] : image.terms()) out.add_term(gamma, f * c);
  }
  return out;
}

PolyFunction diff_op_apply(const XiPolynomial& p, const PolyFunction& f) {
  require_same_dimension(p.dimension(), f.dimension(), "diff_op_apply");
  PolyFunction out(f.dimension());
  for (const auto& [alpha, coeff] : p.terms()) {
    PolyFunction g = f;
    for (int j = 0; j < f.dimension() && !g.is_zero(); ++j)
      for (int e = 0; e < alpha[j]; ++e) g = poly_partial(g, j);
    if (g.is_zero()) continue;
    out += coeff * (g * minus_i_power(total_degree(alpha)));
  }
  return out;
}

XiPolynomial conjugate_by_diffeo(const XiPolynomial& p, const AffineDiffeo& phi) {
  require_same_dimension(p.dimension(), phi.dimension(), "conjugate_by_diffeo");
  if (phi.is_identity()) return p;
  return xi_linear_substitute(pull_back_coefficients(p, phi), phi.inverse_linear());
}

XiPolynomial diffop_symbol_compose(const XiPolynomial& p, const XiPolynomial& k) {
  require_same_dimension(p.dimension(), k.dimension(), "diffop_symbol_compose");
  const int d = p.dimension();
  XiPolynomial out(d);
  if (p.is_zero() || k.is_zero()) return out;
  const int max_order = std::min(p.xi_degree(), k.x_degree());
  for (const auto& alpha : multi_indices_up_to(d, max_order)) {
    XiPolynomial dp = p;
    XiPolynomial dk = k;
    for (int j = 0; j < d; ++j) {
      for (int e = 0; e < alpha[j]; ++e) {
        dp = xi_partial(dp, j);
        dk = x_partial(dk, j);
      }
    }
    if (dp.is_zero() || dk.is_zero()) continue;
    const GaussianRational weight =
        minus_i_power(total_degree(alpha)) / GaussianRational(mpq_class(multi_factorial(alpha)), 0);
    out += (dp * dk) * weight;
  }
  return out;
}

// ---------------------------------------------------------------- FormalSymbol

FormalSymbol::FormalSymbol(int dimension, int order) : dimension_(dimension), order_(order) {
  if (order < 0) throw PreconditionError("negative truncation order");
  levels_.assign(order + 1, XiPolynomial(dimension));
}

FormalSymbol::FormalSymbol(int order, std::vector<XiPolynomial> levels) : order_(order), levels_(std::move(levels)) {
  if (order < 0) throw PreconditionError("negative truncation order");
  if (static_cast<int>(levels_.size()) != order + 1) throw PreconditionError("level count must equal order + 1");
  dimension_ = levels_.front().dimension();
  for (int n = 0; n <= order; ++n) {
    require_same_dimension(dimension_, levels_[n].dimension(), "formal symbol levels");
    if (levels_[n].xi_degree() > n) {
      throw PreconditionError("grading violated: level " + std::to_string(n) + " has xi-degree " +
                              std::to_string(levels_[n].xi_degree()));
    }
  }
}

FormalSymbol FormalSymbol::unit(int dimension, int order) {
  return constant(dimension, order, 1);
}

FormalSymbol FormalSymbol::constant(int dimension, int order, const GaussianRational& c) {
  FormalSymbol s(dimension, order);
  s.levels_[0] = XiPolynomial::from_function(PolyFunction::constant(dimension, c));
  return s;
}

FormalSymbol FormalSymbol::from_function(const PolyFunction& f, int order) {
  FormalSymbol s(f.dimension(), order);
  s.levels_[0] = XiPolynomial::from_function(f);
  return s;
}

FormalSymbol FormalSymbol::at_level(const XiPolynomial& p, int level, int order) {
  FormalSymbol s(p.dimension(), order);
  s.set_level(level, p);
  return s;
}

void FormalSymbol::set_level(int n, XiPolynomial p) {
  if (n < 0 || n > order_) throw PreconditionError("level outside truncation order");
  require_same_dimension(dimension_, p.dimension(), "set_level");
  if (p.xi_degree() > n) throw PreconditionError("grading violated at level " + std::to_string(n));
  levels_[n] = std::move(p);
}

bool FormalSymbol::is_zero() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const XiPolynomial& p) { return p.is_zero(); });
}

bool FormalSymbol::is_xi_free() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const XiPolynomial& p) { return p.is_xi_free(); });
}

bool FormalSymbol::is_hbar_free() const {
  return std::all_of(levels_.begin() + 1, levels_.end(), [](const XiPolynomial& p) { return p.is_zero(); });
}

int FormalSymbol::x_degree() const {
  int deg = -1;
  for (const auto& p : levels_) deg = std::max(deg, p.x_degree());
  return deg;
}

FormalSymbol FormalSymbol::with_order(int order) const {
  FormalSymbol s(dimension_, order);
  for (int n = 0; n <= std::min(order, order_); ++n) s.levels_[n] = levels_[n];
  return s;
}

FormalSymbol& FormalSymbol::operator+=(const FormalSymbol& o) {
  require_same_dimension(dimension_, o.dimension_, "symbol sum");
  if (order_ != o.order_) throw MismatchError("symbol sum: truncation order mismatch");
  for (int n = 0; n <= order_; ++n) levels_[n] += o.levels_[n];
  return *this;
}

FormalSymbol& FormalSymbol::operator-=(const FormalSymbol& o) {
  require_same_dimension(dimension_, o.dimension_, "symbol difference");
  if (order_ != o.order_) throw MismatchError("symbol difference: truncation order mismatch");
  for (int n = 0; n <= order_; ++n) levels_[n] -= o.levels_[n];
  return *this;
}

FormalSymbol& FormalSymbol::operator*=(const GaussianRational& c) {
  for (auto& p : levels_) p *= c;
  return *this;
}

std::string FormalSymbol::to_display() const {
  std::ostringstream os;
  bool first = true;
  for (int n = 0; n <= order_; ++n) {
    if (levels_[n].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (n == 0) {
      os << levels_[n].to_display();
    } else {
      os << "h";
      if (n > 1) os << "^" << n;
      os << "(" << levels_[n].to_display() << ")";
    }
  }
  if (first) os << "0";
  os << " [order " << order_ << "]";
  return os.str();
}

// ---------------------------------------------------------------- FormalFunction / Amplitude

FormalFunction::FormalFunction(int dimension, int order) : dimension_(dimension), order_(order) {
  if (order < 0) throw PreconditionError("negative truncation order");
  levels_.assign(order + 1, PolyFunction(dimension));
}

FormalFunction::FormalFunction(int order, std::vector<PolyFunction> levels)
    : order_(order), levels_(std::move(levels)) {
  if (order < 0 || static_cast<int>(levels_.size()) != order + 1) {
    throw PreconditionError("formal function: level count must equal order + 1");
  }
  dimension_ = levels_.front().dimension();
  for (const auto& f : levels_) require_same_dimension(dimension_, f.dimension(), "formal function levels");
}

FormalFunction FormalFunction::from_function(const PolyFunction& f, int order) {
  FormalFunction out(f.dimension(), order);
  out.levels_[0] = f;
  return out;
}

Amplitude::Amplitude(int order, std::vector<XiPolynomial> levels) : levels_(std::move(levels)) {
  if (order < 0 || static_cast<int>(levels_.size()) != order + 1) {
    throw PreconditionError("amplitude: level count must equal order + 1");
  }
  for (const auto& p : levels_) require_same_dimension(levels_.front().dimension(), p.dimension(), "amplitude");
}

// ---------------------------------------------------------------- operations

FormalFunction op_apply(const FormalSymbol& p, const AffineDiffeo& phi, const FormalFunction& psi) {
  require_same_dimension(p.dimension(), phi.dimension(), "op_apply");
  require_same_dimension(p.dimension(), psi.dimension(), "op_apply");
  const int d = p.dimension();
  const int order = std::min(p.order(), psi.order());
  const AffineDiffeo phi_inv = affine_invert(phi);
  std::vector<PolyFunction> out(order + 1, PolyFunction(d));
  for (int k = 0; k <= order; ++k) {
    const PolyFunction& f = psi.level(k);
    if (f.is_zero()) continue;
    // (D^alpha f) o phi^{-1}, cached per alpha.
    std::map<MultiIndex, PolyFunction, GradedLexLess> pulled;
    auto derivative = [&](const MultiIndex& alpha) -> const PolyFunction& {
      auto it = pulled.find(alpha);
      if (it != pulled.end()) return it->second;
      PolyFunction g = f;
      for (int j = 0; j < d; ++j)
        for (int e = 0; e < alpha[j]; ++e) g = poly_partial(g, j);
      g *= minus_i_power(total_degree(alpha));
      return pulled.emplace(alpha, poly_compose_affine(g, phi_inv)).first->second;
    };
    for (int n = 0; n + k <= order; ++n) {
      for (const auto& [alpha, coeff] : p.level(n).terms()) {
        const PolyFunction& g = derivative(alpha);
        if (!g.is_zero()) out[n + k] += coeff * g;
      }
    }
  }
  return FormalFunction(order, std::move(out));
}

namespace {

// Pieces of the composition law for Op(P, phi1) o Op(K, phi2):
// Op(P, phi) = P(x, A^T D) o T_phi with T_phi psi = psi o phi^{-1}, so
// Op(P,phi1) Op(K,phi2) = [P(x, A1^T D) o (T_phi1 K(x, A2^T D) T_phi1^{-1})] T_{phi1 phi2}
// and the result symbol R satisfies R(x, (A1 A2)^T xi) = left # right.
struct CompositionFrame {
  AffineDiffeo phi1;
  AffineDiffeo phi1_inverse;
  Matrix a1;
  Matrix a2;
  Matrix product_inverse;  // (A1 A2)^{-1}
  bool trivial;
};

CompositionFrame make_frame(const AffineDiffeo& phi1, const AffineDiffeo& phi2) {
  const bool trivial = phi1.is_identity() && phi2.is_identity();
  Matrix prod_inv = phi2.inverse_linear() * phi1.inverse_linear();
  return {phi1, affine_invert(phi1), phi1.linear(), phi2.linear(), std::move(prod_inv), trivial};
}

XiPolynomial left_factor(const XiPolynomial& p, const CompositionFrame& f) {
  return f.trivial ? p : xi_linear_substitute(p, f.a1);
}

XiPolynomial right_factor(const XiPolynomial& k, const CompositionFrame& f) {
  return f.trivial ? k : conjugate_by_diffeo(xi_linear_substitute(k, f.a2), f.phi1_inverse);
}

XiPolynomial finish(const XiPolynomial& s, const CompositionFrame& f) {
  return f.trivial ? s : xi_linear_substitute(s, f.product_inverse);
}

}  // namespace

XiPolynomial star_compose_levels(const XiPolynomial& p, const AffineDiffeo& phi1, const XiPolynomial& k,
                                 const AffineDiffeo& phi2) {
  require_same_dimension(p.dimension(), k.dimension(), "star_compose");
  require_same_dimension(p.dimension(), phi1.dimension(), "star_compose");
  require_same_dimension(p.dimension(), phi2.dimension(), "star_compose");
  if (p.is_zero() || k.is_zero()) return XiPolynomial(p.dimension());
  const CompositionFrame frame = make_frame(phi1, phi2);
  return finish(diffop_symbol_compose(left_factor(p, frame), right_factor(k, frame)), frame);
}

FormalSymbol star_compose(const FormalSymbol& p, const AffineDiffeo& phi1, const FormalSymbol& k,
                          const AffineDiffeo& phi2) {
  require_same_dimension(p.dimension(), k.dimension(), "star_compose");
  require_same_dimension(p.dimension(), phi1.dimension(), "star_compose");
  require_same_dimension(p.dimension(), phi2.dimension(), "star_compose");
  if (p.order() != k.order()) throw MismatchError("star_compose: truncation order mismatch");
  const int order = p.order();
  const int d = p.dimension();
  FormalSymbol out(d, order);
  if (p.is_zero() || k.is_zero()) return out;
  const CompositionFrame frame = make_frame(phi1, phi2);
  std::vector<XiPolynomial> left, right;
  left.reserve(order + 1);
  right.reserve(order + 1);
  for (int n = 0; n <= order; ++n) {
    left.push_back(left_factor(p.level(n), frame));
    right.push_back(right_factor(k.level(n), frame));
  }
  std::vector<XiPolynomial> levels(order + 1, XiPolynomial(d));
  for (int n = 0; n <= order; ++n) {
    if (left[n].is_zero()) continue;
    for (int j = 0; n + j <= order; ++j) {
      if (right[j].is_zero()) continue;
      levels[n + j] += diffop_symbol_compose(left[n], right[j]);
    }
  }
  for (auto& level : levels) level = finish(level, frame);
  return FormalSymbol(order, std::move(levels));
}

FormalSymbol invert_unit(const FormalSymbol& u) {
  const int d = u.dimension();
  const int order = u.order();
  const PolyFunction lead = u.level(0).coefficient(MultiIndex(d, 0));
  if (!u.level(0).is_xi_free() || !lead.is_constant() || lead.is_zero()) {
    throw NotInvertibleError("leading term of a unit must be a nonzero constant");
  }
  const GaussianRational c_inv = lead.coefficient(MultiIndex(d, 0)).inverse();
  std::vector<XiPolynomial> v(order + 1, XiPolynomial(d));
  v[0] = XiPolynomial::from_function(PolyFunction::constant(d, c_inv));
  for (int m = 1; m <= order; ++m) {
    XiPolynomial acc(d);
    for (int i = 1; i <= m; ++i) {
      if (u.level(i).is_zero() || v[m - i].is_zero()) continue;
      acc += diffop_symbol_compose(u.level(i), v[m - i]);
    }
    v[m] = acc * (-c_inv);
  }
  FormalSymbol inv(order, std::move(v));
  const AffineDiffeo id = AffineDiffeo::identity(d);
  const FormalSymbol one = FormalSymbol::unit(d, order);
  if (!(star_compose(u, id, inv, id) == one) || !(star_compose(inv, id, u, id) == one)) {
    throw InternalInconsistency("invert_unit: inverse check failed");
  }
  return inv;
}

FormalSymbol asymptotic_symbol(const Amplitude& a, int order) {
  if (order < 0) throw PreconditionError("negative truncation order");
  if (a.order() < order) throw PreconditionError("amplitude truncation is below the requested order");
  const int d = a.dimension();
  std::vector<XiPolynomial> levels(order + 1, XiPolynomial(d));
  for (int n = 0; n <= order; ++n) {
    for (int j = 0; j <= n; ++j) {
      // (1/alpha!) d_xi^alpha a^j at xi = 0 is the xi^alpha coefficient of a^j; keep |alpha| = n - j.
      for (const auto& [alpha, f] : a.levels()[j].terms()) {
        if (total_degree(alpha) == n - j) levels[n].add_term(alpha, f);
      }
    }
  }
  return FormalSymbol(order, std::move(levels));
}

Amplitude amplitude_from_symbol(const FormalSymbol& p) {
  const int d = p.dimension();
  const int order = p.order();
  std::vector<XiPolynomial> levels(order + 1, XiPolynomial(d));
  for (int n = 0; n <= order; ++n) {
    for (const auto& [alpha, f] : p.level(n).terms()) levels[n - total_degree(alpha)].add_term(alpha, f);
  }
  return Amplitude(order, std::move(levels));
}

}  // namespace gsys
