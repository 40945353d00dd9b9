#include "gsys/solver.hpp"

#include <algorithm>

#include "gsys/error.hpp"

namespace gsys {

GradedBasis::GradedBasis(int dimension, int xi_degree, int x_degree)
    : dimension_(dimension), xi_degree_(xi_degree), x_degree_(x_degree) {
  if (xi_degree < 0 || x_degree < 0) return;
  const auto alphas = multi_indices_up_to(dimension, xi_degree);
  const auto betas = multi_indices_up_to(dimension, x_degree);
  for (const auto& a : alphas)
    for (const auto& b : betas) {
      index_.emplace(std::make_pair(a, b), monomials_.size());
      monomials_.emplace_back(a, b);
    }
}

std::size_t GradedBasis::index_of(const MultiIndex& alpha, const MultiIndex& beta) const {
  const auto it = index_.find({alpha, beta});
  if (it == index_.end()) throw PreconditionError("monomial outside the graded window");
  return it->second;
}

bool GradedBasis::contains(const XiPolynomial& p) const {
  return p.xi_degree() <= xi_degree_ && p.x_degree() <= x_degree_;
}

CochainVector to_coordinates(const Cochain& a, int level, const GradedBasis& basis) {
  require_same_dimension(a.dimension(), basis.dimension(), "to_coordinates");
  CochainVector v{a.degree(), a.size(), basis, std::vector<GaussianRational>(a.size() * basis.size())};
  if (level > a.order()) return v;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const XiPolynomial& p = a.value(t).level(level);
    if (!basis.contains(p)) throw PreconditionError("cochain value leaves the coordinate window");
    for (const auto& [alpha, f] : p.terms())
      for (const auto& [beta, c] : f.terms()) v.coordinates[t * basis.size() + basis.index_of(alpha, beta)] = c;
  }
  return v;
}

Cochain from_coordinates(const ComplexPtr& complex, const CochainVector& v, int level, int order) {
  const int d = complex->dimension();
  const std::size_t b = v.basis.size();
  if (v.tuples != tuple_count(complex->group(), v.degree) || v.coordinates.size() != v.tuples * b) {
    throw PreconditionError("coordinate vector has the wrong shape");
  }
  std::vector<FormalSymbol> values;
  values.reserve(v.tuples);
  for (std::size_t t = 0; t < v.tuples; ++t) {
    XiPolynomial p(d);
    for (std::size_t i = 0; i < b; ++i) {
      const auto& c = v.coordinates[t * b + i];
      if (c.is_zero()) continue;
      const auto& [alpha, beta] = v.basis.monomial(i);
      p.add_term(alpha, PolyFunction::monomial(d, beta, c));
    }
    values.push_back(FormalSymbol::at_level(p, level, order));
  }
  return Cochain::from_values(complex, v.degree, std::move(values));
}

namespace {

int twist_x_degree(const MCElement& p0) { return std::max(0, p0.cochain().levels_between(0, 0).x_degree()); }

bool has_only_level(const Cochain& c, int level) {
  for (const auto& v : c.values())
    for (int n = 0; n <= c.order(); ++n)
      if (n != level && !v.level(n).is_zero()) return false;
  return true;
}

}  // namespace

LinearMap matrix_of_twisted_d(const MCElement& p0, int n, int k, int d_in) {
  if (n < 0 || k < 0) throw PreconditionError("negative level or cochain degree");
  const MCElement lead = p0.leading_term(n);
  const ComplexPtr& cx = lead.cochain().complex();
  const int d = cx->dimension();
  LinearMap map{n, k, GradedBasis(d, n, d_in), GradedBasis(d, n, d_in < 0 ? -1 : d_in + twist_x_degree(lead)), {}};
  const std::size_t in_tuples = tuple_count(cx->group(), k);
  const std::size_t out_tuples = tuple_count(cx->group(), k + 1);
  map.matrix = Matrix(out_tuples * map.codomain.size(), in_tuples * map.domain.size());
  const auto tuples = enumerate_tuples(cx->group(), k);
  for (std::size_t t = 0; t < in_tuples; ++t) {
    for (std::size_t i = 0; i < map.domain.size(); ++i) {
      const auto& [alpha, beta] = map.domain.monomial(i);
      Cochain e = Cochain::zero(cx, k, n);
      e.set(tuples[t], FormalSymbol::at_level(XiPolynomial::monomial(d, alpha, beta), n, n));
      const Cochain image = twisted_differential(lead, e);
      if (!has_only_level(image, n)) throw InternalInconsistency("twisted differential left its hbar-level");
      const CochainVector col = to_coordinates(image, n, map.codomain);
      const std::size_t j = t * map.domain.size() + i;
      for (std::size_t r = 0; r < col.coordinates.size(); ++r)
        if (!col.coordinates[r].is_zero()) map.matrix(r, j) = col.coordinates[r];
    }
  }
  return map;
}

CohomologyReport cohomology_report(const MCElement& p0, int n, int k, int d) {
  const int p = twist_x_degree(p0.leading_term(std::max(n, 0)));
  CohomologyReport r;
  r.n = n;
  r.k = k;
  r.d_in = d;
  r.d_out = d < 0 ? -1 : d + p;
  r.window_closed = p == 0;
  const LinearMap out = matrix_of_twisted_d(p0, n, k, d);
  r.dim_domain = out.matrix.cols();
  r.rank_out = rank(out.matrix);
  r.dim_kernel = r.dim_domain - r.rank_out;
  if (k > 0 && d - p >= 0) {
    const LinearMap in = matrix_of_twisted_d(p0, n, k - 1, d - p);
    r.rank_in = rank(in.matrix);
  }
  r.h_dim = static_cast<long>(r.dim_kernel) - static_cast<long>(r.rank_in);
  return r;
}

OracleResult averaging_homotopy_oracle(const MCElement& p0, const Cochain& z) {
  require_compatible(p0.cochain(), z, "averaging_homotopy_oracle");
  if (z.degree() < 1) throw PreconditionError("averaging oracle needs a cochain of degree >= 1");
  const Cochain& a = p0.cochain();
  const FiniteGroup& g = a.group();
  const int d = a.dimension();
  std::vector<GaussianRational> c(g.size());
  for (std::size_t h = 0; h < g.size(); ++h) {
    const FormalSymbol& v = a.at(GroupTuple{h});
    if (!v.is_hbar_free() || !v.is_xi_free() || v.x_degree() > 0) {
      return {std::nullopt, "twisting element is not constant in x, xi and hbar"};
    }
    c[h] = v.level(0).coefficient(MultiIndex(d, 0)).coefficient(MultiIndex(d, 0));
    if (c[h].is_zero()) return {std::nullopt, "twisting element has a zero value"};
  }
  if (!twisted_differential(p0, z).is_zero()) throw PreconditionError("averaging oracle input is not a cocycle");

  // right action R_h m = c_h m(x, C_h^T xi)
  auto right = [&](std::size_t h, const FormalSymbol& m) {
    std::vector<XiPolynomial> levels;
    for (const auto& lv : m.levels()) levels.push_back(xi_linear_substitute(lv, a.complex()->diffeo(h).inverse_linear()) * c[h]);
    return FormalSymbol(m.order(), std::move(levels));
  };
  const int k = z.degree();
  const GaussianRational scale = GaussianRational::ratio(k % 2 == 0 ? 1 : -1, static_cast<long>(g.size()));
  Cochain w = Cochain::generate(a.complex(), k - 1, z.order(), [&](const GroupTuple& t) {
    FormalSymbol acc(d, z.order());
    GroupTuple ext = t;
    ext.push_back(0);
    for (std::size_t h = 0; h < g.size(); ++h) {
      ext.back() = h;
      acc += right(g.inverse(h), z.at(ext));
    }
    return acc * scale;
  });
  return {std::move(w), {}};
}

LinearSolve solve_in_window(const Matrix& m, std::span<const GaussianRational> rhs) {
  if (rhs.size() != m.rows()) throw PreconditionError("right-hand side has the wrong length");
  LinearSolve s;
  s.rank_matrix = rank(m);
  s.solution = solve_particular(m, rhs);
  if (s.solution) {
    s.rank_augmented = s.rank_matrix;
  } else {
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t col = 0; col < m.cols(); ++col) aug(r, col) = m(r, col);
      aug(r, m.cols()) = rhs[r];
    }
    s.rank_augmented = rank(aug);
  }
  return s;
}

namespace {

struct LevelSolve {
  std::optional<Cochain> solution;
  std::optional<ObstructionCertificate> obstruction;
  OrderRecord record;
};

// Solves d_{P0} X = rhs at hbar-level n, X of cochain degree k, in the smallest window.
LevelSolve solve_level(const MCElement& lead, const Cochain& rhs, int n, int k, int order, const char* stage) {
  const ComplexPtr& cx = lead.cochain().complex();
  LevelSolve out;
  out.record.order = n;
  out.record.rhs_zero = rhs.is_zero();
  const int d_in = std::max(rhs.x_degree(), 0);
  const LinearMap m = matrix_of_twisted_d(lead, n, k, d_in);
  out.record.d_in = d_in;
  out.record.d_out = m.codomain.x_degree();
  out.record.unknowns = m.matrix.cols();
  const CochainVector b = to_coordinates(rhs, n, m.codomain);
  const LinearSolve s = solve_in_window(m.matrix, b.coordinates);
  out.record.rank = s.rank_matrix;
  if (!s.solution) {
    ObstructionCertificate cert;
    cert.order = n;
    cert.stage = stage;
    cert.rhs = rhs;
    cert.level = n;
    cert.cochain_degree = k + 1;
    cert.d_in = d_in;
    cert.d_out = m.codomain.x_degree();
    cert.rank_matrix = s.rank_matrix;
    cert.rank_augmented = s.rank_augmented;
    out.obstruction = std::move(cert);
    return out;
  }
  const CochainVector x{k, tuple_count(cx->group(), k), m.domain, *s.solution};
  Cochain sol = from_coordinates(cx, x, n, order);
  if (!(twisted_differential(lead.with_order(order), sol) == rhs.with_order(order))) {
    throw InternalInconsistency("linear solve does not reproduce the right-hand side");
  }
  out.solution = std::move(sol);
  return out;
}

}  // namespace

OrderSolution solve_order(const MCElement& p0, const Cochain& partial, int n) {
  if (n < 1) throw PreconditionError("solve_order needs n >= 1");
  if (partial.degree() != 1) throw PreconditionError("solve_order expects degree-1 data");
  const MCElement lead = p0.leading_term(n);
  const Cochain q = lead.cochain() + partial.with_order(n).levels_between(1, n - 1);
  const Cochain rhs = -mc_residual(q).levels_between(n, n);
  if (!twisted_differential(lead, rhs).is_zero()) {
    throw InternalInconsistency("right-hand side at order " + std::to_string(n) + " is not a cocycle");
  }
  LevelSolve s = solve_level(lead, rhs, n, 1, n, "mc-extension");
  return {std::move(s.solution), std::move(s.obstruction), s.record};
}

Extension mc_extend(const MCElement& p0, const Cochain& p1, int order) {
  if (order < 1) throw PreconditionError("mc_extend needs order >= 1");
  if (p1.degree() != 1) throw PreconditionError("P1 must be a degree-1 cochain");
  const MCElement lead = p0.leading_term(order);
  Cochain omega = lead.cochain() + p1.with_order(order).levels_between(1, 1);
  if (!twisted_differential(lead, omega.levels_between(1, 1)).is_zero()) {
    throw PreconditionError("P1 is not closed under the twisted differential");
  }
  Extension ext;
  const Cochain first = omega.levels_between(1, 1);
  const int d1 = std::max(first.x_degree(), 0);
  ext.records.push_back({1, d1, d1, 0, 0, first.is_zero()});
  for (int n = 2; n <= order; ++n) {
    OrderSolution s = solve_order(lead, omega, n);
    ext.records.push_back(s.record);
    if (s.obstruction) {
      ext.obstruction = std::move(s.obstruction);
      return ext;
    }
    omega += s.term->with_order(order);
  }
  ext.omega = MCElement::verify(std::move(omega));
  return ext;
}

GaugeResult rigidity_gauge(const MCElement& a, int order) {
  if (order < 0 || order > a.order()) throw PreconditionError("rigidity order must lie in [0, order(a)]");
  const MCElement at = a.with_order(order);
  const MCElement lead = at.leading_term(order);
  const ComplexPtr& cx = at.cochain().complex();
  const Cochain tail = at.cochain() - lead.cochain();
  Cochain u = Cochain::unit(cx, 0, order);
  GaugeResult res;
  for (int m = 1; m <= order; ++m) {
    const Cochain rhs = -cup_star(tail, u).levels_between(m, m);
    if (!twisted_differential(lead, rhs).is_zero()) {
      throw InternalInconsistency("gauge right-hand side at order " + std::to_string(m) + " is not a cocycle");
    }
    LevelSolve s = solve_level(lead, rhs, m, 0, order, "rigidity");
    res.records.push_back(s.record);
    if (s.obstruction) {
      res.obstruction = std::move(s.obstruction);
      return res;
    }
    u += *s.solution;
  }
  const FormalSymbol unit = u.value(0);
  invert_unit(unit);
  const CheckReport check = gauge_relation_check(at, lead, unit);
  if (!check.passed) throw InternalInconsistency("constructed gauge fails the gauge relation");
  res.unit = unit;
  return res;
}

CheckReport trivial_action_split_check(const Cochain& p) {
  const AmplitudeComplex& cx = *p.complex();
  if (!cx.action().is_trivial()) throw PreconditionError("splitting check needs the trivial action");
  const MCElement one = MCElement::verify(Cochain::unit(p.complex(), 1, p.order()));
  const Cochain lhs = twisted_differential(one, p);

  const FiniteGroup& g = cx.group();
  const int k = p.degree();
  const int d = p.dimension();
  CheckReport report;
  // coefficient f_alpha at level n of P evaluated at a tuple
  auto coeff = [&](const GroupTuple& t, int n, const MultiIndex& alpha) { return p.at(t).level(n).coefficient(alpha); };
  for (const auto& t : enumerate_tuples(g, k + 1)) {
    std::vector<XiPolynomial> levels;
    for (int n = 0; n <= p.order(); ++n) {
      XiPolynomial level(d);
      for (const auto& alpha : multi_indices_up_to(d, n)) {
        const GroupTuple head(t.begin() + 1, t.end());
        PolyFunction f = coeff(head, n, alpha);
        for (int i = 1; i <= k; ++i) {
          GroupTuple face;
          for (int j = 0; j <= k; ++j) {
            if (j == i - 1) {
              face.push_back(g.multiply(t[j], t[j + 1]));
              ++j;
            } else {
              face.push_back(t[j]);
            }
          }
          if (i % 2 == 0) f += coeff(face, n, alpha);
          else f -= coeff(face, n, alpha);
        }
        const GroupTuple tail_face(t.begin(), t.end() - 1);
        if ((k + 1) % 2 == 0) f += coeff(tail_face, n, alpha);
        else f -= coeff(tail_face, n, alpha);
        if (!f.is_zero()) level.add_term(alpha, f);
      }
      levels.push_back(std::move(level));
    }
    FormalSymbol diff = lhs.at(t) - FormalSymbol(p.order(), std::move(levels));
    if (!diff.is_zero()) report.witnesses.push_back({t, std::move(diff)});
  }
  report.passed = report.witnesses.empty();
  return report;
}

}  // namespace gsys
