#include "sph/harmonic.hpp"

#include "sph/error.hpp"

#include <gsl/gsl_integration.h>
#include <omp.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

namespace sph {

// Torus ------------------------------------------------------------------------

double LaurentPoly::norm() const {
  double s = 0;
  for (const auto& [k, c] : terms) s += std::norm(c);
  return std::sqrt(s);
}

cplx LaurentPoly::evaluate(const std::vector<cplx>& z) const {
  cplx s = 0;
  for (const auto& [k, c] : terms) {
    cplx m = c;
    for (std::size_t i = 0; i < vars; ++i) m *= std::pow(z[i], k[i]);
    s += m;
  }
  return s;
}

LaurentPoly random_laurent(std::size_t vars, int window, std::size_t terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> e(-window, window);
  std::uniform_real_distribution<double> u(-1, 1);
  LaurentPoly f;
  f.vars = vars;
  f.window = window;
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<int> k(vars);
    for (auto& x : k) x = e(rng);
    f.terms[k] += cplx(u(rng), u(rng));
  }
  return f;
}

namespace {

// Values of f on the grid (omega^{j_1}, ..., omega^{j_n}), omega = e^{2 pi i / N},
// flattened with j_1 fastest.
std::vector<cplx> grid_values(const LaurentPoly& f, int n_grid) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < f.vars; ++i) total *= static_cast<std::size_t>(n_grid);
  std::vector<cplx> roots(static_cast<std::size_t>(n_grid));
  for (int j = 0; j < n_grid; ++j) roots[static_cast<std::size_t>(j)] = std::polar(1.0, 2 * std::numbers::pi * j / n_grid);
  std::vector<cplx> out(total);
  for (std::size_t p = 0; p < total; ++p) {
    std::vector<long> j(f.vars);
    std::size_t r = p;
    for (auto& x : j) {
      x = static_cast<long>(r % static_cast<std::size_t>(n_grid));
      r /= static_cast<std::size_t>(n_grid);
    }
    cplx s = 0;
    for (const auto& [k, c] : f.terms) {
      long phase = 0;
      for (std::size_t i = 0; i < f.vars; ++i) phase += j[i] * k[i];
      phase = ((phase % n_grid) + n_grid) % n_grid;
      s += c * roots[static_cast<std::size_t>(phase)];
    }
    out[p] = s;
  }
  return out;
}

cplx extract(const std::vector<cplx>& values, const std::vector<int>& delta, int n_grid) {
  std::vector<cplx> roots(static_cast<std::size_t>(n_grid));
  for (int j = 0; j < n_grid; ++j) roots[static_cast<std::size_t>(j)] = std::polar(1.0, -2 * std::numbers::pi * j / n_grid);
  cplx s = 0;
  for (std::size_t p = 0; p < values.size(); ++p) {
    long phase = 0;
    std::size_t r = p;
    for (int d : delta) {
      phase += static_cast<long>(r % static_cast<std::size_t>(n_grid)) * d;
      r /= static_cast<std::size_t>(n_grid);
    }
    phase = ((phase % n_grid) + n_grid) % n_grid;
    s += values[p] * roots[static_cast<std::size_t>(phase)];
  }
  return s / static_cast<double>(values.size());
}

}  // namespace

TorusProjection project_torus(const LaurentPoly& f, const std::vector<int>& delta) {
  if (delta.size() != f.vars) throw Error(ErrorCode::DegenerateInput, "label has the wrong number of coordinates");
  TorusProjection out;
  out.component.vars = f.vars;
  out.component.window = f.window;
  for (int d : delta)
    if (std::abs(d) > f.window) out.outside_window = true;
  if (out.outside_window) return out;
  const int n = 2 * f.window + 2;
  out.component.terms[delta] = extract(grid_values(f, n), delta, n);
  return out;
}

std::map<std::vector<int>, LaurentPoly> torus_components(const LaurentPoly& f, double threshold) {
  const int n = 2 * f.window + 2;
  const auto values = grid_values(f, n);
  std::map<std::vector<int>, LaurentPoly> out;
  std::vector<int> delta(f.vars, -f.window);
  while (true) {
    const cplx c = extract(values, delta, n);
    if (std::abs(c) > threshold) {
      LaurentPoly p;
      p.vars = f.vars;
      p.window = f.window;
      p.terms[delta] = c;
      out.emplace(delta, std::move(p));
    }
    std::size_t i = 0;
    for (; i < delta.size(); ++i) {
      if (++delta[i] <= f.window) break;
      delta[i] = -f.window;
    }
    if (i == delta.size()) break;
  }
  return out;
}

double laurent_distance(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly d = a;
  for (const auto& [k, c] : b.terms) d.terms[k] -= c;
  return d.norm();
}

// SU(2) --------------------------------------------------------------------------

SU2Element random_su2(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> n;
  double v[4];
  double s = 0;
  for (double& x : v) {
    x = n(rng);
    s += x * x;
  }
  s = std::sqrt(s);
  return {cplx(v[0] / s, v[1] / s), cplx(v[2] / s, v[3] / s)};
}

C2Poly C2Poly::zero(int degree) { return {degree, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension(degree)))}; }

std::size_t C2Poly::index(int a, int b) {
  const int m = a + b;
  return static_cast<std::size_t>(m * (m + 1) / 2 + b);
}

cplx C2Poly::evaluate(cplx x, cplx y) const {
  cplx s = 0;
  for (int m = 0; m <= degree; ++m)
    for (int b = 0; b <= m; ++b) s += coeffs(static_cast<Eigen::Index>(index(m - b, b))) * std::pow(x, m - b) * std::pow(y, b);
  return s;
}

C2Poly random_c2poly(int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  C2Poly f = C2Poly::zero(degree);
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) f.coeffs(i) = cplx(u(rng), u(rng));
  return f;
}

C2Poly homogeneous_part(const C2Poly& f, int m) {
  C2Poly out = C2Poly::zero(f.degree);
  if (m < 0 || m > f.degree) return out;
  for (int b = 0; b <= m; ++b) {
    const auto i = static_cast<Eigen::Index>(C2Poly::index(m - b, b));
    out.coeffs(i) = f.coeffs(i);
  }
  return out;
}

namespace {

// Coefficients of (p x + q y)^n on x^{n-j} y^j.
std::vector<cplx> binomial_power(cplx p, cplx q, int n) {
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1;
  for (int step = 1; step <= n; ++step)
    for (int j = step; j >= 0; --j) {
      const std::size_t u = static_cast<std::size_t>(j);
      c[u] = (j < step ? c[u] * p : cplx(0)) + (j > 0 ? c[u - 1] * q : cplx(0));
    }
  return c;
}

}  // namespace

Eigen::MatrixXcd su2_action(const SU2Element& k, int degree) {
  // (k^{-1} v) = (conj(alpha) x + conj(beta) y, -beta x + alpha y)
  const cplx p = std::conj(k.alpha), q = std::conj(k.beta), r = -k.beta, s = k.alpha;
  const auto n = static_cast<Eigen::Index>(C2Poly::dimension(degree));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  std::vector<std::vector<cplx>> first, second;
  for (int a = 0; a <= degree; ++a) {
    first.push_back(binomial_power(p, q, a));
    second.push_back(binomial_power(r, s, a));
  }
  for (int m = 0; m <= degree; ++m)
    for (int b = 0; b <= m; ++b) {
      const int a = m - b;
      const auto& fa = first[static_cast<std::size_t>(a)];
      const auto& sb = second[static_cast<std::size_t>(b)];
      const auto col = static_cast<Eigen::Index>(C2Poly::index(a, b));
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) {
          const int ydeg = i + j;
          out(static_cast<Eigen::Index>(C2Poly::index(m - ydeg, ydeg)), col) += fa[static_cast<std::size_t>(i)] * sb[static_cast<std::size_t>(j)];
        }
    }
  return out;
}

Eigen::VectorXd fischer_weights(int degree) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(C2Poly::dimension(degree)));
  for (int m = 0; m <= degree; ++m)
    for (int b = 0; b <= m; ++b)
      w(static_cast<Eigen::Index>(C2Poly::index(m - b, b))) = std::tgamma(m - b + 1) * std::tgamma(b + 1);
  return w;
}

double su2_character(int delta, const SU2Element& k) {
  const double x = k.alpha.real();
  double u0 = 1, u1 = 2 * x;
  if (delta == 0) return u0;
  for (int n = 1; n < delta; ++n) {
    const double u2 = 2 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

QuadratureScheme QuadratureScheme::su2(int band) {
  if (band < 0) throw Error(ErrorCode::BandLimit, "band limit must be nonnegative");
  QuadratureScheme q;
  q.band = band;
  const int n_angle = 2 * band + 1;
  const std::size_t n_gl = static_cast<std::size_t>(band / 2 + 1);
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(n_gl), &gsl_integration_glfixed_table_free);
  for (std::size_t g = 0; g < n_gl; ++g) {
    double u = 0, wu = 0;
    gsl_integration_glfixed_point(0.0, 1.0, g, &u, &wu, table.get());
    for (int i = 0; i < n_angle; ++i)
      for (int j = 0; j < n_angle; ++j) {
        const double xi1 = 2 * std::numbers::pi * i / n_angle, xi2 = 2 * std::numbers::pi * j / n_angle;
        q.nodes.push_back({std::polar(std::sqrt(1 - u), xi1), std::polar(std::sqrt(u), xi2)});
        q.weights.push_back(wu / (n_angle * n_angle));
      }
  }
  return q;
}

QuadratureScheme QuadratureScheme::corrupted(std::uint64_t seed, double amplitude) const {
  QuadratureScheme q = *this;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(1 - amplitude, 1 + amplitude);
  for (auto& w : q.weights) w *= u(rng);
  return q;
}

double schur_orthogonality_defect(const QuadratureScheme& q) {
  double worst = 0;
  for (int a = 0; a <= q.band; ++a)
    for (int b = a; b <= q.band; ++b) {
      double s = 0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * su2_character(a, q.nodes[i]) * su2_character(b, q.nodes[i]);
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

namespace {

constexpr std::size_t kChunk = 256;

// Sums contributions node by node inside fixed chunks, then pairwise across
// chunks. The association order depends only on the node count, so the
// threaded and single-threaded runs agree bit for bit.
template <class T, class Add>
T blocked_sum(std::size_t n, const T& zero, Add add, bool parallel) {
  const std::size_t chunks = std::max<std::size_t>(1, (n + kChunk - 1) / kChunk);
  std::vector<T> partial(chunks, zero);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t c = 0; c < chunks; ++c)
    for (std::size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) add(i, partial[c]);
  for (std::size_t width = 1; width < chunks; width *= 2)
    for (std::size_t i = 0; i + width < chunks; i += 2 * width) partial[i] += partial[i + width];
  return partial[0];
}

void check_band(const C2Poly& f, const QuadratureScheme& q) {
  if (q.band < 2 * f.degree)
    throw Error(ErrorCode::BandLimit, "band limit " + std::to_string(q.band) + " is below twice the degree " + std::to_string(f.degree));
}

C2Poly project_impl(const C2Poly& f, int delta, const QuadratureScheme& q, bool parallel) {
  check_band(f, q);
  if (delta < 0 || delta > 2 * q.band - f.degree)
    throw Error(ErrorCode::DegenerateInput, "label " + std::to_string(delta) + " is outside the exactly integrated range");
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(f.coeffs.size());
  C2Poly out{f.degree, blocked_sum(
                           q.nodes.size(), zero,
                           [&](std::size_t i, Eigen::VectorXcd& acc) {
                             const double c = q.weights[i] * (delta + 1) * su2_character(delta, q.nodes[i]);
                             acc += c * (su2_action(q.nodes[i], f.degree) * f.coeffs);
                           },
                           parallel)};
  return out;
}

std::vector<Eigen::MatrixXcd> matrices_impl(const QuadratureScheme& q, int degree, bool parallel) {
  if (q.band < 2 * degree) throw Error(ErrorCode::BandLimit, "band limit below twice the degree");
  const auto n = static_cast<Eigen::Index>(C2Poly::dimension(degree));
  const std::vector<Eigen::MatrixXcd> zero(static_cast<std::size_t>(degree) + 1, Eigen::MatrixXcd::Zero(n, n));
  struct Acc {
    std::vector<Eigen::MatrixXcd> m;
    Acc& operator+=(const Acc& o) {
      for (std::size_t d = 0; d < m.size(); ++d) m[d] += o.m[d];
      return *this;
    }
  };
  return blocked_sum(
             q.nodes.size(), Acc{zero},
             [&](std::size_t i, Acc& acc) {
               const Eigen::MatrixXcd r = su2_action(q.nodes[i], degree);
               for (int d = 0; d <= degree; ++d)
                 acc.m[static_cast<std::size_t>(d)] += (q.weights[i] * (d + 1) * su2_character(d, q.nodes[i])) * r;
             },
             parallel)
      .m;
}

}  // namespace

C2Poly project_su2(const C2Poly& f, int delta, const QuadratureScheme& q) { return project_impl(f, delta, q, true); }
C2Poly project_su2_serial(const C2Poly& f, int delta, const QuadratureScheme& q) { return project_impl(f, delta, q, false); }

std::vector<Eigen::MatrixXcd> projector_matrices(const QuadratureScheme& q, int degree) { return matrices_impl(q, degree, true); }
std::vector<Eigen::MatrixXcd> projector_matrices_serial(const QuadratureScheme& q, int degree) {
  return matrices_impl(q, degree, false);
}

double ProjectorReport::max_residual() const {
  return std::max({idempotence, orthogonality, commutation, self_adjointness, completeness});
}

ProjectorReport verify_projector_algebra(const QuadratureScheme& q, int degree, std::size_t k_samples, std::uint64_t seed) {
  const auto e = projector_matrices(q, degree);
  const auto n = static_cast<Eigen::Index>(C2Poly::dimension(degree));
  ProjectorReport r;
  r.degree = degree;
  // D E D^{-1} is Hermitian iff E is self-adjoint for diag(D^2)
  const Eigen::VectorXd d = fischer_weights(degree).cwiseSqrt();
  std::vector<Eigen::MatrixXcd> rho;
  for (std::size_t s = 0; s < k_samples; ++s) rho.push_back(su2_action(random_su2(seed, s), degree));
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t a = 0; a < e.size(); ++a) {
    total += e[a];
    r.idempotence = std::max(r.idempotence, (e[a] * e[a] - e[a]).norm());
    for (std::size_t b = 0; b < e.size(); ++b)
      if (a != b) r.orthogonality = std::max(r.orthogonality, (e[a] * e[b]).norm());
    for (const auto& k : rho) r.commutation = std::max(r.commutation, (e[a] * k - k * e[a]).norm());
    const Eigen::MatrixXcd s = d.asDiagonal() * e[a] * d.cwiseInverse().asDiagonal();
    r.self_adjointness = std::max(r.self_adjointness, (s - s.adjoint()).norm());
  }
  r.completeness = (total - Eigen::MatrixXcd::Identity(n, n)).norm();
  return r;
}

IsotypicReport finite_series_check(const C2Poly& f, const QuadratureScheme& q, double threshold) {
  check_band(f, q);
  IsotypicReport r;
  r.max_delta_checked = 2 * q.band - f.degree;
  const std::size_t labels = static_cast<std::size_t>(r.max_delta_checked) + 1;
  struct Acc {
    std::vector<Eigen::VectorXcd> v;
    Acc& operator+=(const Acc& o) {
      for (std::size_t d = 0; d < v.size(); ++d) v[d] += o.v[d];
      return *this;
    }
  };
  const Acc sums = blocked_sum(
      q.nodes.size(), Acc{std::vector<Eigen::VectorXcd>(labels, Eigen::VectorXcd::Zero(f.coeffs.size()))},
      [&](std::size_t i, Acc& acc) {
        const Eigen::VectorXcd pulled = su2_action(q.nodes[i], f.degree) * f.coeffs;
        for (std::size_t d = 0; d < labels; ++d) {
          const int delta = static_cast<int>(d);
          acc.v[d] += (q.weights[i] * (delta + 1) * su2_character(delta, q.nodes[i])) * pulled;
        }
      },
      true);
  Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(f.coeffs.size());
  r.support_within_degree = true;
  for (std::size_t d = 0; d < labels; ++d) {
    if (sums.v[d].norm() <= threshold) continue;
    r.components.emplace(static_cast<int>(d), C2Poly{f.degree, sums.v[d]});
    rebuilt += sums.v[d];
    if (static_cast<int>(d) > f.degree) r.support_within_degree = false;
  }
  r.residual = (f.coeffs - rebuilt).norm();
  return r;
}

}  // namespace sph
