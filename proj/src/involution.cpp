#include "sph/involution.hpp"

#include "sph/error.hpp"
#include "sph/spherical.hpp"
#include "sph/sympoly.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <omp.h>

#include <algorithm>
#include <random>
#include <sstream>

namespace sph {

std::string to_string(InvolutionKind k) {
  switch (k) {
    case InvolutionKind::WeylTheta: return "weyl_theta";
    case InvolutionKind::CartanTau: return "cartan_tau";
    case InvolutionKind::SigmaProduct: return "sigma_product";
    case InvolutionKind::Custom: return "custom";
  }
  return "?";
}

InvolutionSpec build_weyl_involution(const LieAlgebra& g) {
  InvolutionSpec s;
  s.kind = InvolutionKind::WeylTheta;
  s.matrix = QMatrix(g.dim(), g.dim());
  const auto& rs = g.roots();
  for (std::size_t b = 0; b < rs.num_positive_roots(); ++b) {
    s.matrix(g.f(b), g.e(b)) = -1;
    s.matrix(g.e(b), g.f(b)) = -1;
  }
  for (std::size_t i = 0; i < rs.rank(); ++i) s.matrix(g.h(i), g.h(i)) = -1;
  for (std::size_t k = 0; k < rs.torus_rank(); ++k) s.matrix(g.t(k), g.t(k)) = -1;
  return s;
}

InvolutionSpec build_cartan_involution(const LieAlgebra& g) {
  InvolutionSpec s = build_weyl_involution(g);
  s.kind = InvolutionKind::CartanTau;
  s.antilinear = true;
  return s;
}

InvolutionSpec compose(const InvolutionSpec& outer, const InvolutionSpec& inner) {
  // Real matrices: conjugating inner's matrix changes nothing.
  InvolutionSpec s;
  s.antilinear = outer.antilinear != inner.antilinear;
  s.matrix = outer.matrix * inner.matrix;
  s.kind = outer.kind == InvolutionKind::CartanTau && inner.kind == InvolutionKind::WeylTheta ? InvolutionKind::SigmaProduct
                                                                                               : InvolutionKind::Custom;
  return s;
}

bool is_involutive(const InvolutionSpec& s) { return s.matrix * s.matrix == QMatrix::identity(s.matrix.rows()); }

bool preserves_brackets(const LieAlgebra& g, const InvolutionSpec& s) {
  std::vector<LieElement> img;
  for (std::size_t k = 0; k < g.dim(); ++k) img.push_back(s.apply(g.unit(k)));
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = a + 1; b < g.dim(); ++b) {
      LieElement lhs = g.zero();
      for (const auto& [c, v] : g.basis_bracket(a, b)) lhs = axpy(lhs, v, img[c]);
      if (lhs != g.bracket(img[a], img[b])) return false;
    }
  return true;
}

namespace {

LieElement random_element(const std::vector<LieElement>& basis, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-9, 9);
  LieElement x(n);
  for (const auto& b : basis) x = axpy(x, Rational(d(rng)), b);
  return x;
}

// {y in span(basis) : [x, y] = 0} as ambient vectors.
std::vector<LieElement> centralizer_in(const LieAlgebra& g, const LieElement& x, const std::vector<LieElement>& basis) {
  if (basis.empty()) return {};
  std::vector<QVector> cols;
  for (const auto& b : basis) cols.push_back(g.bracket(x, b));
  const auto kernel = nullspace(QMatrix::from_columns(cols, g.dim()));
  std::vector<LieElement> out;
  for (const auto& c : kernel) {
    LieElement y = g.zero();
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (c[j] != 0) y = axpy(y, c[j], basis[j]);
    out.push_back(std::move(y));
  }
  return out;
}

std::size_t intersection_dim(const std::vector<LieElement>& a, const std::vector<LieElement>& b, std::size_t n) {
  std::vector<QVector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank_of_vectors(a, n) + rank_of_vectors(b, n) - rank_of_vectors(both, n);
}

}  // namespace

AdaptednessReport is_adapted(const SubalgebraSpec& h, const InvolutionSpec& theta, std::uint64_t seed) {
  if (!h.is_reductive()) throw Error(ErrorCode::NonReductive, "subalgebra '" + h.name() + "' is not reductive");
  const LieAlgebra& g = h.ambient();
  AdaptednessReport r;
  r.theta_stable = std::all_of(h.basis().begin(), h.basis().end(), [&](const LieElement& x) { return h.contains(theta.apply(x)); });
  if (!r.theta_stable) {
    r.diagnostic = "theta does not preserve h";
    return r;
  }
  // m = (-1)-eigenspace of theta on h
  std::vector<LieElement> m_span;
  for (const auto& x : h.basis()) m_span.push_back(axpy(x, -1, theta.apply(x)));
  const std::vector<LieElement> m = span_basis(m_span, g.dim());

  std::mt19937_64 rng(seed ^ 0x5a5a5a5aULL);
  constexpr int kTrials = 6;
  r.rank_h = h.dim();
  for (int t = 0; t < kTrials && h.dim() > 0; ++t)
    r.rank_h = std::min(r.rank_h, centralizer_in(g, random_element(h.basis(), g.dim(), rng), h.basis()).size());
  std::vector<LieElement> best;
  r.split_rank = m.size();
  best = m;
  for (int t = 0; t < kTrials && !m.empty(); ++t) {
    auto a = centralizer_in(g, random_element(m, g.dim(), rng), m);
    if (a.size() <= r.split_rank) {
      r.split_rank = a.size();
      best = std::move(a);
    }
  }
  bool abelian = true;
  for (std::size_t i = 0; i < best.size() && abelian; ++i)
    for (std::size_t j = i + 1; j < best.size() && abelian; ++j) abelian = is_zero(g.bracket(best[i], best[j]));
  bool self_normalizing = false;
  if (abelian) {
    const SubalgebraSpec a(h.ambient_ptr(), best, "a");
    const SubalgebraSpec na = normalizer(a);
    self_normalizing = intersection_dim(na.basis(), h.basis(), g.dim()) == a.dim();
  }
  r.restriction_is_weyl = abelian && self_normalizing && r.split_rank == r.rank_h;
  r.verdict = r.theta_stable && r.restriction_is_weyl;
  if (r.restriction_is_weyl) r.cartan = best;
  std::ostringstream os;
  os << "rank(h) = " << r.rank_h << ", toral part of the (-1)-eigenspace has dimension " << r.split_rank
     << (abelian ? "" : ", not abelian") << (abelian && !self_normalizing ? ", not self-normalizing" : "");
  r.diagnostic = os.str();
  return r;
}

QMatrix HModule::rho(const SubalgebraSpec& h, const LieElement& x) const {
  const auto c = h.coordinates(x);
  if (!c) throw Error(ErrorCode::NotSubalgebra, "element outside the acting subalgebra");
  QMatrix m(dim, dim);
  for (std::size_t k = 0; k < c->size(); ++k)
    if ((*c)[k] != 0) m += action[k] * (*c)[k];
  return m;
}

HModule restrict_module(const IrrepModule& m, const SubalgebraSpec& h, std::string description) {
  HModule out;
  out.description = std::move(description);
  out.dim = m.dim;
  for (const auto& x : h.basis()) out.action.push_back(m.rho(x));
  return out;
}

HModule character_module(const SubalgebraSpec& h, const Weight& w) {
  const LieAlgebra& g = h.ambient();
  const auto& rs = g.roots();
  if (w.coords.size() != rs.weight_length()) throw Error(ErrorCode::DegenerateInput, "character has the wrong number of coordinates");
  auto value = [&](const LieElement& x) {
    Rational v = 0;
    for (std::size_t i = 0; i < rs.rank(); ++i) v += x[g.h(i)] * w.coords[i];
    for (std::size_t k = 0; k < rs.torus_rank(); ++k) v += x[g.t(k)] * w.coords[rs.rank() + k];
    return v;
  };
  for (std::size_t a = 0; a < h.dim(); ++a)
    for (std::size_t b = a + 1; b < h.dim(); ++b)
      if (value(g.bracket(h.basis()[a], h.basis()[b])) != 0)
        throw Error(ErrorCode::DegenerateInput, "weight " + rs.format_weight(w) + " is not a character of '" + h.name() + "'");
  HModule out;
  out.description = "char(" + rs.format_weight(w) + ")";
  out.dim = 1;
  for (const auto& x : h.basis()) {
    QMatrix m(1, 1);
    m(0, 0) = value(x);
    out.action.push_back(std::move(m));
  }
  return out;
}

HModule trivial_module(const SubalgebraSpec& h) {
  HModule out;
  out.description = "trivial";
  out.dim = 1;
  out.action.assign(h.dim(), QMatrix(1, 1));
  return out;
}

HModule parse_hmodule(const SubalgebraSpec& h, const std::string& text) {
  const auto& rs = h.ambient().roots();
  if (text == "trivial") return trivial_module(h);
  if (text.rfind("char(", 0) == 0 && text.back() == ')') {
    std::string body = text.substr(5, text.size() - 6);
    std::replace(body.begin(), body.end(), '|', ',');
    IVector c;
    std::stringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        c.push_back(std::stol(item));
      } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "bad character coordinate '" + item + "' in '" + text + "'");
      }
    }
    return character_module(h, Weight{c});
  }
  const GModule gm = parse_gmodule(rs, text);
  HModule out;
  out.description = "restriction of " + gm.format(rs);
  std::vector<IrrepModule> parts;
  for (const auto& [w, mult] : gm.summands)
    for (long k = 0; k < mult; ++k) parts.push_back(build_module(h.ambient(), w));
  for (const auto& p : parts) out.dim += p.dim;
  for (const auto& x : h.basis()) {
    QMatrix m(out.dim, out.dim);
    std::size_t off = 0;
    for (const auto& p : parts) {
      const QMatrix b = p.rho(x);
      for (std::size_t i = 0; i < p.dim; ++i)
        for (std::size_t j = 0; j < p.dim; ++j) m(off + i, off + j) = b(i, j);
      off += p.dim;
    }
    out.action.push_back(std::move(m));
  }
  return out;
}

namespace {

struct NuSystem {
  std::size_t n = 0;
  std::vector<QVector> kernel;  // realified: P entries then Q entries
  bool identity_solves = true;  // rho(sigma x) = rho(x) on h, so plain conjugation works
};

// N conj(A) = B N with A = rho(x_j), B = rho(sigma x_j); rational A, B make the
// real and imaginary parts decouple into P A = B P, Q A = B Q.
NuSystem realified_kernel(const SubalgebraSpec& h, const HModule& v, const InvolutionSpec& theta) {
  const LieAlgebra& g = h.ambient();
  const InvolutionSpec sigma = compose(build_cartan_involution(g), theta);
  const std::size_t n = v.dim;
  bool identity_solves = true;
  SparseSystem sys(2 * n * n);
  for (std::size_t j = 0; j < h.dim(); ++j) {
    const LieElement y = sigma.apply(h.basis()[j]);
    if (!h.contains(y)) throw Error(ErrorCode::NotSubalgebra, "the involution does not preserve '" + h.name() + "'");
    const QMatrix& a = v.action[j];
    const QMatrix b = v.rho(h, y);
    if (!(a == b)) identity_solves = false;
    for (std::size_t part = 0; part < 2; ++part) {
      const std::size_t base = part * n * n;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          SparseSystem::Row row;
          for (std::size_t k = 0; k < n; ++k) {
            if (a(k, c) != 0) row[base + r * n + k] += a(k, c);
            if (b(r, k) != 0) row[base + k * n + c] -= b(r, k);
          }
          std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
          if (!row.empty()) sys.add_equation(std::move(row));
        }
    }
  }
  return {n, sys.nullspace(), identity_solves};
}

GMatrix to_gmatrix(const QVector& x, std::size_t n) {
  GMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = GaussRational(x[r * n + c], x[n * n + r * n + c]);
  return m;
}

std::optional<Rational> scalar_of(const GMatrix& s) {
  const GaussRational c = s(0, 0);
  if (c.im != 0) return std::nullopt;
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t k = 0; k < s.cols(); ++k)
      if (!(s(r, k) == (r == k ? c : GaussRational(0)))) return std::nullopt;
  return c.re;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  return Rational(mpz_class(sqrt(num)), mpz_class(sqrt(den)));
}

bool normalize_phase(GMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const GaussRational z = m(r, c);
      if (z.is_zero()) continue;
      GaussRational factor;
      if (z.im == 0) factor = GaussRational(z.re > 0 ? 1 : -1);
      else if (z.re == 0) factor = GaussRational(0, z.im > 0 ? -1 : 1);
      else if (auto q = rational_sqrt(z.re * z.re + z.im * z.im)) factor = GaussRational(z.re / *q, -z.im / *q);
      else return false;
      m = factor * m;
      return true;
    }
  return true;
}

}  // namespace

std::size_t intertwiner_space_dim(const SubalgebraSpec& h, const HModule& v, const InvolutionSpec& theta) {
  return realified_kernel(h, v, theta).kernel.size();
}

NuSolution solve_nu(const SubalgebraSpec& h, const HModule& v, const InvolutionSpec& theta) {
  const NuSystem sys = realified_kernel(h, v, theta);
  const std::size_t n = sys.n;
  if (sys.kernel.empty())
    throw Error(ErrorCode::NoIntertwiner, "no antilinear intertwiner for " + v.description + " on '" + h.name() + "'");

  // N = I first: it is the canonical choice whenever sigma acts trivially on V
  std::vector<QVector> candidates;
  if (sys.identity_solves) {
    QVector id(2 * n * n);
    for (std::size_t r = 0; r < n; ++r) id[r * n + r] = 1;
    candidates.push_back(std::move(id));
  }
  candidates.insert(candidates.end(), sys.kernel.begin(), sys.kernel.end());
  QVector real_sum(2 * n * n), all_sum(2 * n * n);
  for (const auto& k : sys.kernel) {
    all_sum = axpy(all_sum, 1, k);
    if (std::all_of(k.begin() + static_cast<std::ptrdiff_t>(n * n), k.end(), [](const Rational& q) { return q == 0; }))
      real_sum = axpy(real_sum, 1, k);
  }
  candidates.push_back(real_sum);
  candidates.push_back(all_sum);

  bool quaternionic = false;
  for (const auto& cand : candidates) {
    if (is_zero(cand)) continue;
    GMatrix m = to_gmatrix(cand, n);
    const auto s = scalar_of(m * m.conj());
    if (!s || *s == 0) continue;
    if (*s < 0) {
      quaternionic = true;
      continue;
    }
    const auto q = rational_sqrt(*s);
    if (!q) continue;
    NuSolution out;
    out.square_scalar = *s;
    out.realified_dim = sys.kernel.size();
    m = GaussRational(1 / *q) * m;
    out.phase_normalized = normalize_phase(m);
    out.nu.matrix = std::move(m);
    return out;
  }
  if (quaternionic)
    throw Error(ErrorCode::QuaternionicObstruction,
                "every intertwiner for " + v.description + " squares to a negative multiple of the identity");
  throw Error(ErrorCode::Inconclusive, "no intertwiner among the candidates squares to a rational square multiple of the identity");
}

bool verify_bundle_certificate(const BundleCertificate& c) {
  const std::size_t n = c.theta.matrix.rows();
  const QMatrix id = QMatrix::identity(n);
  const bool i = c.sigma.antilinear && c.sigma.matrix * c.sigma.matrix == id;
  // tau(theta x) = M_tau conj(M_theta x); with real matrices conj(M_theta) = M_theta.
  const bool ii = c.sigma.matrix == c.tau.matrix * c.theta.matrix;
  const bool comm = c.theta.matrix * c.tau.matrix == c.tau.matrix * c.theta.matrix;
  bool iii = c.nu.matrix.rows() == c.module.dim;
  for (std::size_t j = 0; j < c.h->dim() && iii; ++j) {
    const GMatrix a(c.module.action[j]);
    const GMatrix b(c.module.rho(*c.h, c.sigma.apply(c.h->basis()[j])));
    iii = c.nu.matrix * a.conj() == b * c.nu.matrix;
  }
  return i && ii && comm && iii && c.nu.is_involutive() && c.sigma_involutive == i && c.sigma_is_tau_theta == ii &&
         c.tau_theta_commute == comm && c.nu_equivariant == iii;
}

BundleCertificate assemble_bundle_involution(const SubalgebraSpec& h, const HModule& v) {
  const LieAlgebra& g = h.ambient();
  BundleCertificate c;
  c.theta = build_weyl_involution(g);
  const AdaptednessReport adapted = is_adapted(h, c.theta);
  if (!adapted.verdict) throw Error(ErrorCode::NotAdapted, "'" + h.name() + "' is not adapted: " + adapted.diagnostic);
  c.tau = build_cartan_involution(g);
  c.sigma = compose(c.tau, c.theta);
  c.h = std::make_shared<const SubalgebraSpec>(h);
  c.module = v;
  const NuSolution sol = solve_nu(h, v, c.theta);
  c.nu = sol.nu;
  c.realified_dim = sol.realified_dim;

  const QMatrix id = QMatrix::identity(g.dim());
  c.sigma_involutive = c.sigma.antilinear && c.sigma.matrix * c.sigma.matrix == id;
  c.sigma_is_tau_theta = c.sigma.matrix == c.tau.matrix * c.theta.matrix;
  c.tau_theta_commute = c.theta.matrix * c.tau.matrix == c.tau.matrix * c.theta.matrix;
  c.nu_equivariant = true;
  for (std::size_t j = 0; j < h.dim() && c.nu_equivariant; ++j) {
    const GMatrix a(v.action[j]);
    const GMatrix b(v.rho(h, c.sigma.apply(h.basis()[j])));
    c.nu_equivariant = c.nu.matrix * a.conj() == b * c.nu.matrix;
  }
  c.nu_involutive = c.nu.is_involutive();
  return c;
}

// Numerical side ---------------------------------------------------------------

Eigen::MatrixXcd to_eigen(const QMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

Eigen::MatrixXcd to_eigen(const GMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = std::complex<double>(m(r, c).re.get_d(), m(r, c).im.get_d());
  return out;
}

ModelPoint apply_mu(const ModelPoint& x, const AntilinearMap& nu) {
  ModelPoint y;
  y.t.reserve(x.t.size());
  for (const auto& t : x.t) y.t.push_back(std::conj(t));
  y.v = to_eigen(nu.matrix) * x.v.conjugate();
  return y;
}

QMatrix contravariant_form(const LieAlgebra& g, const IrrepModule& w) {
  const std::size_t n = w.dim;
  SparseSystem sys(n * n);
  auto idx = [n](std::size_t r, std::size_t c) { return r * n + c; };
  const auto& rs = g.roots();
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    const QMatrix& e = w.action[g.e(rs.simple_root_index(i))];
    const QMatrix& f = w.action[g.f(rs.simple_root_index(i))];
    // (e^T M - M f)(r, c) = sum_k e(k, r) M(k, c) - M(r, k) f(k, c)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        SparseSystem::Row row;
        for (std::size_t k = 0; k < n; ++k) {
          if (e(k, r) != 0) row[idx(k, c)] += e(k, r);
          if (f(k, c) != 0) row[idx(r, k)] -= f(k, c);
        }
        std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
        if (!row.empty()) sys.add_equation(std::move(row));
      }
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      SparseSystem::Row row;
      row[idx(r, c)] = 1;
      row[idx(c, r)] = -1;
      sys.add_equation(std::move(row));
      // distinct weights are orthogonal
      if (w.weight_basis[r] != w.weight_basis[c]) sys.add_equation({{idx(r, c), Rational(1)}});
    }
  const auto kernel = sys.nullspace();
  if (kernel.size() != 1 || kernel[0][0] == 0) throw Error(ErrorCode::Internal, "contravariant form is not unique");
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = kernel[0][idx(r, c)] / kernel[0][0];
  return m;
}

Eigen::MatrixXcd orthonormal_basis(const QMatrix& gram) {
  Eigen::MatrixXd m(gram.rows(), gram.cols());
  for (std::size_t r = 0; r < gram.rows(); ++r)
    for (std::size_t c = 0; c < gram.cols(); ++c) m(r, c) = gram(r, c).get_d();
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NonOrthonormal, "invariant form is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXd u = l.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  return u.cast<std::complex<double>>();
}

namespace {

std::vector<std::vector<int>> monomials(std::size_t n, std::size_t d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, static_cast<int>(d));
  return out;
}

}  // namespace

HModule symmetric_power(const SubalgebraSpec& h, const HModule& v, std::size_t d) {
  const auto mons = monomials(v.dim, d);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t k = 0; k < mons.size(); ++k) index[mons[k]] = k;
  HModule out;
  out.description = "S^" + std::to_string(d) + "(" + v.description + ")";
  out.dim = mons.size();
  for (std::size_t j = 0; j < h.dim(); ++j) {
    const QMatrix& a = v.action[j];
    QMatrix s(out.dim, out.dim);
    for (std::size_t col = 0; col < mons.size(); ++col)
      for (std::size_t i = 0; i < v.dim; ++i) {
        if (mons[col][i] == 0) continue;
        for (std::size_t l = 0; l < v.dim; ++l) {
          if (a(l, i) == 0) continue;
          auto target = mons[col];
          --target[i];
          ++target[l];
          s(index.at(target), col) += a(l, i) * mons[col][i];
        }
      }
    out.action.push_back(std::move(s));
  }
  return out;
}

Eigen::VectorXcd power_coordinates(const Eigen::VectorXcd& v, std::size_t d) {
  const auto mons = monomials(static_cast<std::size_t>(v.size()), d);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(mons.size()));
  for (std::size_t k = 0; k < mons.size(); ++k) {
    double coeff = 1;  // multinomial d! / prod k_i!
    int run = 0;
    for (int e : mons[k])
      for (int q = 1; q <= e; ++q) coeff = coeff * (++run) / q;
    std::complex<double> p = coeff;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      for (int q = 0; q < mons[k][static_cast<std::size_t>(i)]; ++q) p *= v(i);
    out(static_cast<Eigen::Index>(k)) = p;
  }
  return out;
}

PhiFunction::PhiFunction(const LieAlgebra& g, const IrrepModule& w, const QMatrix& gram, Eigen::MatrixXcd unitary_basis,
                         std::vector<Eigen::MatrixXcd> phi_by_degree, std::size_t v_dim)
    : label_(w.label),
      npos_(g.roots().num_positive_roots()),
      rank_(g.roots().rank()),
      torus_(g.roots().torus_rank()),
      gram_(to_eigen(gram)),
      basis_(std::move(unitary_basis)),
      phi_(std::move(phi_by_degree)),
      v_dim_(v_dim) {
  for (const auto& a : w.action) pi_basis_.push_back(to_eigen(a));
  const Eigen::MatrixXcd check = basis_.adjoint() * gram_ * basis_;
  const double dev = (check - Eigen::MatrixXcd::Identity(check.rows(), check.cols())).cwiseAbs().maxCoeff();
  if (basis_.rows() != gram_.rows() || dev > 1e-10)
    throw Error(ErrorCode::NonOrthonormal, "basis is not orthonormal for the invariant form (deviation " + std::to_string(dev) + ")");
}

Eigen::MatrixXcd PhiFunction::pi(const ModelPoint& x) const {
  const auto n = static_cast<Eigen::Index>(gram_.rows());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t k = 0; k < x.t.size() && k < pi_basis_.size(); ++k) {
    if (x.t[k] == std::complex<double>(0)) continue;
    const Eigen::MatrixXcd a = x.t[k] * pi_basis_[k];
    m = m * a.exp();
  }
  return m;
}

std::size_t PhiFunction::compact_dim() const { return 2 * npos_ + rank_ + torus_; }

Eigen::MatrixXcd PhiFunction::pi_compact(const std::vector<double>& coeffs) const {
  const auto n = static_cast<Eigen::Index>(gram_.rows());
  const std::complex<double> i1(0, 1);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
  std::size_t k = 0;
  for (std::size_t b = 0; b < npos_; ++b) {
    const auto& e = pi_basis_[b];
    const auto& f = pi_basis_[npos_ + rank_ + torus_ + b];
    x += coeffs.at(k++) * (e - f);
    x += (i1 * coeffs.at(k++)) * (e + f);
  }
  for (std::size_t j = 0; j < rank_ + torus_; ++j) x += (i1 * coeffs.at(k++)) * pi_basis_[npos_ + j];
  return x.exp();
}

double PhiFunction::value(const Eigen::MatrixXcd& pi_g, const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(gram_.rows());
  for (std::size_t d = 0; d < phi_.size(); ++d)
    if (phi_[d].size() > 0) w += phi_[d] * power_coordinates(v, d);
  const Eigen::VectorXcd y = pi_g * w;
  return (basis_.adjoint() * gram_ * y).squaredNorm();
}

double PhiFunction::operator()(const ModelPoint& x) const { return value(pi(x), x.v); }

std::vector<PhiFunction> phi_family(const BundleCertificate& c, std::size_t count, std::size_t max_v_degree) {
  const SubalgebraSpec& h = *c.h;
  const LieAlgebra& g = h.ambient();
  const auto& rs = g.roots();
  std::vector<HModule> powers;
  for (std::size_t d = 0; d <= max_v_degree; ++d) powers.push_back(symmetric_power(h, c.module, d));

  std::vector<PhiFunction> out;
  constexpr long kMaxLabelDegree = 16;
  constexpr std::size_t kMaxW = 30;
  for (long deg = 0; deg <= kMaxLabelDegree && out.size() < count; ++deg) {
    // labels of this degree, semisimple part first
    std::vector<Weight> labels;
    IVector cur(rs.weight_length(), 0);
    auto rec = [&](auto&& self, std::size_t i, long left) -> void {
      if (i == cur.size()) {
        if (left == 0) labels.push_back(Weight{cur});
        return;
      }
      if (i < rs.rank()) {
        for (long k = 0; k <= left; ++k) {
          cur[i] = k;
          self(self, i + 1, left - k);
        }
      } else {
        for (long k = -left; k <= left; ++k) {
          cur[i] = k;
          self(self, i + 1, left - std::labs(k));
        }
      }
      cur[i] = 0;
    };
    rec(rec, 0, deg);
    for (const auto& w : labels) {
      if (out.size() >= count) break;
      if (weyl_dim(rs, w) > kMaxW) continue;
      const IrrepModule mod = build_module(g, w);
      std::vector<Eigen::MatrixXcd> phi(max_v_degree + 1);
      bool any = false;
      for (std::size_t d = 0; d <= max_v_degree; ++d) {
        const HModule& s = powers[d];
        const std::size_t rows = mod.dim, cols = s.dim;
        SparseSystem sys(rows * cols);
        for (std::size_t j = 0; j < h.dim(); ++j) {
          const QMatrix p = mod.rho(h.basis()[j]);
          const QMatrix& q = s.action[j];
          for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t cc = 0; cc < cols; ++cc) {
              SparseSystem::Row row;
              for (std::size_t k = 0; k < rows; ++k)
                if (p(r, k) != 0) row[k * cols + cc] += p(r, k);
              for (std::size_t k = 0; k < cols; ++k)
                if (q(k, cc) != 0) row[r * cols + k] -= q(k, cc);
              std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
              if (!row.empty()) sys.add_equation(std::move(row));
            }
        }
        const auto kernel = sys.nullspace();
        if (kernel.empty()) continue;
        QMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t cc = 0; cc < cols; ++cc) m(r, cc) = kernel[0][r * cols + cc];
        phi[d] = to_eigen(m);
        any = true;
      }
      if (!any) continue;
      const QMatrix gram = contravariant_form(g, mod);
      out.emplace_back(g, mod, gram, orthonormal_basis(gram), std::move(phi), c.module.dim);
    }
  }
  return out;
}

std::vector<ModelPoint> random_model_points(const LieAlgebra& g, std::size_t v_dim, std::size_t count, std::uint64_t seed,
                                            double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<ModelPoint> out(count);
  for (auto& p : out) {
    for (std::size_t k = 0; k < g.dim(); ++k) p.t.emplace_back(scale * u(rng), scale * u(rng));
    p.v.resize(static_cast<Eigen::Index>(v_dim));
    for (Eigen::Index i = 0; i < p.v.size(); ++i) p.v(i) = std::complex<double>(u(rng), u(rng));
  }
  return out;
}

namespace {

void sample_residual(const std::vector<PhiFunction>& family, const Eigen::MatrixXcd& nu, const ModelPoint& x, double& abs_res,
                     double& rel_res) {
  ModelPoint y;
  for (const auto& t : x.t) y.t.push_back(std::conj(t));
  y.v = nu * x.v.conjugate();
  abs_res = 0;
  rel_res = 0;
  for (const auto& phi : family) {
    const double a = phi(x), b = phi(y);
    abs_res = std::max(abs_res, std::abs(a - b));
    rel_res = std::max(rel_res, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
}

OrbitReport summarize(std::size_t functions, std::vector<double> abs_res, const std::vector<double>& rel_res) {
  OrbitReport r;
  r.samples = abs_res.size();
  r.functions = functions;
  for (std::size_t s = 0; s < abs_res.size(); ++s) {
    r.max_residual = std::max(r.max_residual, abs_res[s]);
    r.max_relative_residual = std::max(r.max_relative_residual, rel_res[s]);
  }
  r.residual_per_sample = std::move(abs_res);
  return r;
}

}  // namespace

OrbitReport orbit_preservation_check(const std::vector<PhiFunction>& family, const AntilinearMap& nu,
                                     const std::vector<ModelPoint>& samples) {
  const Eigen::MatrixXcd n = to_eigen(nu.matrix);
  std::vector<double> abs_res(samples.size()), rel_res(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t s = 0; s < samples.size(); ++s) sample_residual(family, n, samples[s], abs_res[s], rel_res[s]);
  return summarize(family.size(), std::move(abs_res), rel_res);
}

OrbitReport orbit_preservation_check_serial(const std::vector<PhiFunction>& family, const AntilinearMap& nu,
                                            const std::vector<ModelPoint>& samples) {
  const Eigen::MatrixXcd n = to_eigen(nu.matrix);
  std::vector<double> abs_res(samples.size()), rel_res(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) sample_residual(family, n, samples[s], abs_res[s], rel_res[s]);
  return summarize(family.size(), std::move(abs_res), rel_res);
}

}  // namespace sph
