#include "gsys/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gsys/error.hpp"

namespace gsys {

int total_degree(const MultiIndex& beta) { return std::accumulate(beta.begin(), beta.end(), 0); }

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_degree) {
  std::vector<MultiIndex> out;
  if (max_degree < 0) return out;
  MultiIndex cur(dim, 0);
  // Enumerate the box, keep the simplex, then sort.
  auto rec = [&](auto&& self, int axis, int remaining) -> void {
    if (axis == dim) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[axis] = e;
      self(self, axis + 1, remaining - e);
    }
    cur[axis] = 0;
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

mpz_class multi_factorial(const MultiIndex& alpha) {
  mpz_class out = 1;
  for (int a : alpha) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(a));
    out *= f;
  }
  return out;
}

void require_same_dimension(int a, int b, const char* what) {
  if (a != b) {
    throw MismatchError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                        std::to_string(b) + ")");
  }
}

PolyFunction::PolyFunction(int dimension) : dimension_(dimension) {
  if (dimension <= 0) throw PreconditionError("polynomial dimension must be positive");
}

PolyFunction PolyFunction::constant(int dimension, const GaussianRational& c) {
  PolyFunction p(dimension);
  p.add_term(MultiIndex(dimension, 0), c);
  return p;
}

PolyFunction PolyFunction::monomial(int dimension, MultiIndex beta, const GaussianRational& c) {
  if (static_cast<int>(beta.size()) != dimension) throw MismatchError("monomial exponent length mismatch");
  PolyFunction p(dimension);
  p.add_term(beta, c);
  return p;
}

PolyFunction PolyFunction::variable(int dimension, int axis) {
  if (axis < 0 || axis >= dimension) throw PreconditionError("axis out of range");
  MultiIndex beta(dimension, 0);
  beta[axis] = 1;
  return monomial(dimension, std::move(beta));
}

int PolyFunction::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

bool PolyFunction::is_constant() const { return degree() <= 0; }

GaussianRational PolyFunction::coefficient(const MultiIndex& beta) const {
  auto it = terms_.find(beta);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

void PolyFunction::add_term(const MultiIndex& beta, const GaussianRational& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(beta.size()) != dimension_) throw MismatchError("exponent length mismatch");
  for (int e : beta)
    if (e < 0) throw PreconditionError("negative exponent");
  auto [it, inserted] = terms_.try_emplace(beta, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyFunction& PolyFunction::operator+=(const PolyFunction& o) {
  require_same_dimension(dimension_, o.dimension_, "polynomial sum");
  for (const auto& [beta, c] : o.terms_) add_term(beta, c);
  return *this;
}

PolyFunction& PolyFunction::operator-=(const PolyFunction& o) {
  require_same_dimension(dimension_, o.dimension_, "polynomial difference");
  for (const auto& [beta, c] : o.terms_) add_term(beta, -c);
  return *this;
}

PolyFunction& PolyFunction::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [beta, v] : terms_) v *= c;
  return *this;
}

PolyFunction operator*(const PolyFunction& a, const PolyFunction& b) {
  require_same_dimension(a.dimension_, b.dimension_, "polynomial product");
  PolyFunction out(a.dimension_);
  MultiIndex beta(a.dimension_);
  for (const auto& [ba, ca] : a.terms_) {
    for (const auto& [bb, cb] : b.terms_) {
      for (int j = 0; j < a.dimension_; ++j) beta[j] = ba[j] + bb[j];
      out.add_term(beta, ca * cb);
    }
  }
  return out;
}

std::string PolyFunction::to_display(const char* var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [beta, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool unit = c == GaussianRational(1);
    const bool constant_term = total_degree(beta) == 0;
    if (!unit || constant_term) os << (c.is_real() ? c.to_display() : "(" + c.to_display() + ")");
    bool need_star = !unit || constant_term;
    for (int j = 0; j < dimension_; ++j) {
      if (beta[j] == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      os << var;
      if (dimension_ > 1) os << (j + 1);
      if (beta[j] > 1) os << "^" << beta[j];
    }
  }
  return os.str();
}

PolyFunction poly_mul(const PolyFunction& f, const PolyFunction& g) { return f * g; }

PolyFunction poly_partial(const PolyFunction& f, int axis) {
  if (axis < 0 || axis >= f.dimension()) throw PreconditionError("partial derivative axis out of range");
  PolyFunction out(f.dimension());
  for (const auto& [beta, c] : f.terms()) {
    if (beta[axis] == 0) continue;
    MultiIndex b = beta;
    b[axis] -= 1;
    out.add_term(b, c * GaussianRational(beta[axis]));
  }
  return out;
}

PolyFunction substitute_affine(const PolyFunction& f, const Matrix& m, std::span<const GaussianRational> offset) {
  const int d = f.dimension();
  if (m.rows() != static_cast<std::size_t>(d) || m.cols() != static_cast<std::size_t>(d) ||
      offset.size() != static_cast<std::size_t>(d)) {
    throw MismatchError("affine substitution dimension mismatch");
  }
  if (f.is_zero()) return f;
  // Linear forms y_i = sum_j m_ij x_j + offset_i and their powers, computed lazily.
  std::vector<std::vector<PolyFunction>> powers(d);
  for (int i = 0; i < d; ++i) {
    PolyFunction form = PolyFunction::constant(d, offset[i]);
    for (int j = 0; j < d; ++j) form += PolyFunction::variable(d, j) * m(i, j);
    powers[i].push_back(PolyFunction::constant(d, 1));
    powers[i].push_back(std::move(form));
  }
  auto power = [&](int i, int e) -> const PolyFunction& {
    while (static_cast<int>(powers[i].size()) <= e) powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][e];
  };
  PolyFunction out(d);
  for (const auto& [beta, c] : f.terms()) {
    PolyFunction term = PolyFunction::constant(d, c);
    for (int i = 0; i < d; ++i)
      if (beta[i] > 0) term = term * power(i, beta[i]);
    out += term;
  }
  return out;
}

PolyFunction substitute_linear(const PolyFunction& f, const Matrix& m) {
  const std::vector<GaussianRational> zero(f.dimension());
  return substitute_affine(f, m, zero);
}

}  // namespace gsys
