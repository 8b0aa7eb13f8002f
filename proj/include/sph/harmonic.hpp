#pragma once

// Isotypic projectors E_delta f = int_K conj(chi_delta(k)) rho(k) f dk for
// K = U(1)^n on Laurent polynomials and K = SU(2) on polynomials on C^2,
// with rho(k) f(x) = f(k^{-1} x).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace sph {

using cplx = std::complex<double>;

// Torus ------------------------------------------------------------------------

/// Finite Laurent polynomial in n variables with exponents in [-window, window].
struct LaurentPoly {
  std::size_t vars = 1;
  int window = 0;
  std::map<std::vector<int>, cplx> terms;

  double norm() const;
  cplx evaluate(const std::vector<cplx>& z) const;
};

LaurentPoly random_laurent(std::size_t vars, int window, std::size_t terms, std::uint64_t seed);

struct TorusProjection {
  LaurentPoly component;
  bool outside_window = false;  // delta outside the window: component is zero
};

/// Coefficient extraction by a DFT on a (2 window + 2)^n grid of f's values.
/// Labels follow the monomial multidegree: z^delta is the delta-component.
TorusProjection project_torus(const LaurentPoly& f, const std::vector<int>& delta);
/// All components in one pass; zero components omitted.
std::map<std::vector<int>, LaurentPoly> torus_components(const LaurentPoly& f, double threshold = 1e-12);
double laurent_distance(const LaurentPoly& a, const LaurentPoly& b);

// SU(2) --------------------------------------------------------------------------

/// k = [[alpha, -conj(beta)], [beta, conj(alpha)]].
struct SU2Element {
  cplx alpha, beta;
};

SU2Element random_su2(std::uint64_t seed, std::size_t index);

/// Polynomial on C^2 of degree <= degree, coefficients on x^a y^b ordered by
/// total degree and then by decreasing a.
struct C2Poly {
  int degree = 0;
  Eigen::VectorXcd coeffs;

  static C2Poly zero(int degree);
  static std::size_t index(int a, int b);
  static std::size_t dimension(int degree) { return static_cast<std::size_t>((degree + 1) * (degree + 2) / 2); }
  double norm() const { return coeffs.norm(); }
  cplx evaluate(cplx x, cplx y) const;
};

C2Poly random_c2poly(int degree, std::uint64_t seed);
/// Homogeneous degree-m part.
C2Poly homogeneous_part(const C2Poly& f, int m);

/// Matrix of rho(k) on polynomials of degree <= degree (block diagonal by degree).
Eigen::MatrixXcd su2_action(const SU2Element& k, int degree);
/// Fischer form diag(a! b!), invariant under U(2).
Eigen::VectorXd fischer_weights(int degree);
/// chi_delta(k) = U_delta(Re alpha), trace on the (delta+1)-dimensional irreducible.
double su2_character(int delta, const SU2Element& k);

/// Product rule in Hopf coordinates alpha = cos(eta) e^{i xi1}, beta = sin(eta) e^{i xi2}:
/// trapezoid in xi1, xi2 and Gauss-Legendre in u = sin^2(eta), whose Haar
/// density is uniform. Exact for polynomial integrands in (alpha, beta, conjugates)
/// of total degree <= 2 band.
struct QuadratureScheme {
  int band = 0;
  std::vector<SU2Element> nodes;
  std::vector<double> weights;

  static QuadratureScheme su2(int band);
  /// Negative control: weights rescaled by random factors in [1 - amp, 1 + amp].
  QuadratureScheme corrupted(std::uint64_t seed, double amplitude = 0.5) const;
};

/// max |sum_i w_i chi_a(k_i) chi_b(k_i) - [a = b]| over a, b <= band.
double schur_orthogonality_defect(const QuadratureScheme& q);

/// Throws BandLimit when q.band < 2 f.degree, DegenerateInput when delta > 2 q.band - f.degree
/// (the integrand would no longer be integrated exactly) or delta < 0.
C2Poly project_su2(const C2Poly& f, int delta, const QuadratureScheme& q);
C2Poly project_su2_serial(const C2Poly& f, int delta, const QuadratureScheme& q);

/// Operator matrices of E_0, ..., E_degree on polynomials of degree <= degree.
std::vector<Eigen::MatrixXcd> projector_matrices(const QuadratureScheme& q, int degree);
std::vector<Eigen::MatrixXcd> projector_matrices_serial(const QuadratureScheme& q, int degree);

struct ProjectorReport {
  int degree = 0;
  double idempotence = 0;      // max ||E_d^2 - E_d||
  double orthogonality = 0;    // max ||E_d E_e||, d != e
  double commutation = 0;      // max ||E_d rho(k) - rho(k) E_d|| over sampled k
  double self_adjointness = 0; // max ||G E_d - E_d^* G||, G the Fischer form
  double completeness = 0;     // ||sum_d E_d - I||
  double max_residual() const;
};

ProjectorReport verify_projector_algebra(const QuadratureScheme& q, int degree, std::size_t k_samples = 8,
                                         std::uint64_t seed = 0);

struct IsotypicReport {
  std::map<int, C2Poly> components;  // delta -> E_delta f, norms above threshold only
  double residual = 0;               // ||f - sum E_delta f||
  int max_delta_checked = 0;
  bool support_within_degree = false;
};

/// E_delta f for every delta <= 2 q.band - f.degree (all exactly integrated).
IsotypicReport finite_series_check(const C2Poly& f, const QuadratureScheme& q, double threshold = 1e-8);

}  // namespace sph
