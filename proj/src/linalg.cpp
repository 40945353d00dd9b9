#include "gsys/linalg.hpp"

#include <utility>

#include "gsys/error.hpp"

namespace gsys {

namespace {

struct GaussInt {
  mpz_class re;
  mpz_class im;

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// a*b - c*d
GaussInt cross(const GaussInt& a, const GaussInt& b, const GaussInt& c, const GaussInt& d) {
  GaussInt l = mul(a, b);
  GaussInt r = mul(c, d);
  return {l.re - r.re, l.im - r.im};
}

// Sparse row: (column, value) pairs sorted by column, no zero values.
using IntRow = std::vector<std::pair<std::size_t, GaussInt>>;

std::vector<IntRow> to_integer_rows(const Matrix& m) {
  std::vector<IntRow> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class scale = 1;
    for (const auto& z : m.row(r)) {
      if (z.is_zero()) continue;
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), z.re().get_den_mpz_t());
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), z.im().get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& z = m(r, c);
      if (z.is_zero()) continue;
      out[r].emplace_back(c, GaussInt{z.re().get_num() * (scale / z.re().get_den()),
                                      z.im().get_num() * (scale / z.im().get_den())});
    }
  }
  return out;
}

// Divides by the gcd of all real and imaginary parts.
void make_primitive(IntRow& row) {
  mpz_class g = 0;
  for (const auto& [c, z] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.re.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.im.get_mpz_t());
    if (g == 1) return;
  }
  if (sgn(g) == 0) return;
  for (auto& [c, z] : row) {
    mpz_divexact(z.re.get_mpz_t(), z.re.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(z.im.get_mpz_t(), z.im.get_mpz_t(), g.get_mpz_t());
  }
}

// a*row - b*pivot, skipping the (cancelling) leading entry.
IntRow eliminate(const IntRow& row, const GaussInt& a, const IntRow& pivot, const GaussInt& b) {
  IntRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 1, j = 1;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.emplace_back(row[i].first, mul(a, row[i].second));
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      GaussInt v = mul(b, pivot[j].second);
      out.emplace_back(pivot[j].first, GaussInt{-v.re, -v.im});
      ++j;
    } else {
      GaussInt v = cross(a, row[i].second, b, pivot[j].second);
      if (!v.is_zero()) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

struct IntegerEchelon {
  std::vector<IntRow> rows;
  std::vector<std::size_t> pivots;
};

// Rows are bucketed by leading column and processed left to right, so the pivot columns
// are the leftmost independent columns whatever pivot row is picked in a bucket.
IntegerEchelon integer_echelon(std::vector<IntRow> rows, std::size_t cols) {
  std::vector<std::vector<std::size_t>> by_lead(cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    make_primitive(rows[r]);
    by_lead[rows[r].front().first].push_back(r);
  }
  IntegerEchelon out;
  for (std::size_t c = 0; c < cols; ++c) {
    auto& bucket = by_lead[c];
    if (bucket.empty()) continue;
    std::size_t best = 0;
    for (std::size_t k = 1; k < bucket.size(); ++k)
      if (rows[bucket[k]].size() < rows[bucket[best]].size()) best = k;
    const std::size_t p = bucket[best];
    const GaussInt piv = rows[p].front().second;
    for (std::size_t k = 0; k < bucket.size(); ++k) {
      if (k == best) continue;
      IntRow& row = rows[bucket[k]];
      const GaussInt lead = row.front().second;
      row = eliminate(row, piv, rows[p], lead);
      if (row.empty()) continue;
      make_primitive(row);
      by_lead[row.front().first].push_back(bucket[k]);
    }
    bucket.clear();
    out.pivots.push_back(c);
    out.rows.push_back(std::move(rows[p]));
  }
  return out;
}

GaussianRational to_rational(const GaussInt& z) { return {mpq_class(z.re), mpq_class(z.im)}; }

// Back substitution on an echelon system with free coordinates fixed by `x`.
void back_substitute(const EchelonForm& e, std::span<const GaussianRational> rhs, std::vector<GaussianRational>& x) {
  for (std::size_t k = e.rank; k-- > 0;) {
    const std::size_t pc = e.pivot_columns[k];
    GaussianRational acc = rhs.empty() ? GaussianRational{} : rhs[k];
    for (std::size_t j = pc + 1; j < e.rows.cols(); ++j) {
      if (!e.rows(k, j).is_zero() && !x[j].is_zero()) acc -= e.rows(k, j) * x[j];
    }
    x[pc] = acc / e.rows(k, pc);
  }
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& z : data_)
    if (!z.is_zero()) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw MismatchError("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

std::vector<GaussianRational> operator*(const Matrix& m, std::span<const GaussianRational> v) {
  if (m.cols() != v.size()) throw MismatchError("matrix-vector shape mismatch");
  std::vector<GaussianRational> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw MismatchError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const GaussianRational scale = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const GaussianRational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

EchelonForm fraction_free_echelon(const Matrix& m) {
  IntegerEchelon ie = integer_echelon(to_integer_rows(m), m.cols());
  EchelonForm e;
  e.rank = ie.pivots.size();
  e.pivot_columns = std::move(ie.pivots);
  e.rows = Matrix(e.rank, m.cols());
  for (std::size_t r = 0; r < e.rank; ++r)
    for (const auto& [c, z] : ie.rows[r]) e.rows(r, c) = to_rational(z);
  return e;
}

std::size_t rank(const Matrix& m) {
  return integer_echelon(to_integer_rows(m), m.cols()).pivots.size();
}

std::optional<std::vector<GaussianRational>> solve_particular(const Matrix& m,
                                                              std::span<const GaussianRational> rhs) {
  if (rhs.size() != m.rows()) throw MismatchError("right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  EchelonForm e = fraction_free_echelon(aug);
  if (e.rank > 0 && e.pivot_columns.back() == m.cols()) return std::nullopt;
  std::vector<GaussianRational> last(e.rank);
  for (std::size_t r = 0; r < e.rank; ++r) last[r] = e.rows(r, m.cols());
  // Drop the augmented column before back substitution.
  EchelonForm lhs;
  lhs.rank = e.rank;
  lhs.pivot_columns = e.pivot_columns;
  lhs.rows = Matrix(e.rank, m.cols());
  for (std::size_t r = 0; r < e.rank; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) lhs.rows(r, c) = e.rows(r, c);
  std::vector<GaussianRational> x(m.cols());
  back_substitute(lhs, last, x);
  return x;
}

std::vector<std::vector<GaussianRational>> nullspace(const Matrix& m) {
  const EchelonForm e = fraction_free_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<GaussianRational>> basis;
  const std::vector<GaussianRational> zeros(e.rank);
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<GaussianRational> x(m.cols());
    x[f] = 1;
    back_substitute(e, zeros, x);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace gsys
