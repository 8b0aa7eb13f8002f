#pragma once

// Weyl involutions, adaptedness, antilinear intertwiners and the involution
// data on homogeneous bundles G x_H V, with numerical orbit checks through
// K-invariant functions Phi = sum_j |f_j|^2.

#include "sph/lie_algebra.hpp"
#include "sph/linalg.hpp"
#include "sph/repthy.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sph {

enum class InvolutionKind { WeylTheta, CartanTau, SigmaProduct, Custom };
std::string to_string(InvolutionKind k);

/// Involution of g on the Chevalley basis. Complex-linear maps act by
/// x -> matrix * x; antilinear ones by x -> matrix * conj(x) on complex
/// coordinates. All matrices used here are rational.
struct InvolutionSpec {
  InvolutionKind kind = InvolutionKind::Custom;
  bool antilinear = false;
  QMatrix matrix;

  /// Image of a rational element (conjugation is trivial on rational coordinates).
  LieElement apply(const LieElement& x) const { return matrix * x; }
  /// lambda -> -w0(lambda), the action on highest weights.
  Weight act_on_weight(const RootSystem& rs, const Weight& lambda) const { return dual_label(rs, lambda); }
};

/// Chevalley involution: e_beta -> -f_beta, f_beta -> -e_beta, h -> -h, t -> -t.
InvolutionSpec build_weyl_involution(const LieAlgebra& g);
/// Conjugation of the compact real form: x -> theta(conj x).
InvolutionSpec build_cartan_involution(const LieAlgebra& g);
/// sigma = tau o theta, the conjugation of the split real form.
InvolutionSpec compose(const InvolutionSpec& outer, const InvolutionSpec& inner);

bool is_involutive(const InvolutionSpec& s);
/// Exhaustive check [s x, s y] = s [x, y] on basis pairs (rational basis, so
/// the antilinear case reduces to the same identity).
bool preserves_brackets(const LieAlgebra& g, const InvolutionSpec& s);

struct AdaptednessReport {
  bool theta_stable = false;
  bool restriction_is_weyl = false;
  bool verdict = false;
  std::size_t rank_h = 0;     // dimension of a Cartan subalgebra of h
  std::size_t split_rank = 0; // dimension of a maximal toral subspace of the (-1)-eigenspace
  std::vector<LieElement> cartan;  // Cartan subalgebra of h on which theta = -id, when found
  std::string diagnostic;
};

/// Throws NonReductive.
AdaptednessReport is_adapted(const SubalgebraSpec& h, const InvolutionSpec& theta, std::uint64_t seed = 0);

/// v -> matrix * conj(v).
struct AntilinearMap {
  GMatrix matrix;

  /// (A conj)(B conj) = A conj(B), a linear map.
  GMatrix compose_linear(const AntilinearMap& other) const { return matrix * other.matrix.conj(); }
  GMatrix square() const { return compose_linear(*this); }
  bool is_involutive() const { return square() == GMatrix::identity(matrix.rows()); }
};

/// A finite-dimensional h-module: one matrix per element of h.basis().
struct HModule {
  std::string description;
  std::size_t dim = 0;
  std::vector<QMatrix> action;

  QMatrix rho(const SubalgebraSpec& h, const LieElement& x) const;
};

HModule restrict_module(const IrrepModule& m, const SubalgebraSpec& h, std::string description = "restriction");
/// Character of h given by a weight on the Cartan coordinates; h must be
/// inside the Cartan subalgebra's normaliser so that the weight is a Lie
/// algebra homomorphism on h (checked). Throws DegenerateInput.
HModule character_module(const SubalgebraSpec& h, const Weight& w);
HModule trivial_module(const SubalgebraSpec& h);
/// "trivial", "char(2)" / "char(1,0|3)" (character), or a G-module spec that is
/// restricted to h ("defining", "(1,0)", ...).
HModule parse_hmodule(const SubalgebraSpec& h, const std::string& text);

struct NuSolution {
  AntilinearMap nu;
  std::size_t realified_dim = 0;  // real dimension of the solution space
  Rational square_scalar;         // nu^2 = square_scalar * id before rescaling
  bool phase_normalized = false;  // first nonzero entry made positive real
};

/// Solves N conj(rho(x)) = rho(sigma x) N for x in h.basis(), sigma = tau o theta,
/// realified as N = P + iQ. Throws NoIntertwiner, QuaternionicObstruction,
/// NotSubalgebra (theta does not preserve h), Inconclusive.
NuSolution solve_nu(const SubalgebraSpec& h, const HModule& v, const InvolutionSpec& theta);
/// Real dimension of the solution space only.
std::size_t intertwiner_space_dim(const SubalgebraSpec& h, const HModule& v, const InvolutionSpec& theta);

struct BundleCertificate {
  std::shared_ptr<const SubalgebraSpec> h;
  HModule module;
  InvolutionSpec theta, tau, sigma;
  AntilinearMap nu;
  std::size_t realified_dim = 0;
  bool sigma_involutive = false;       // (i)
  bool sigma_is_tau_theta = false;     // (ii) sigma = tau theta ...
  bool tau_theta_commute = false;      //      ... and the factors commute
  bool nu_equivariant = false;         // (iii)
  bool nu_involutive = false;

  bool passed() const { return sigma_involutive && sigma_is_tau_theta && tau_theta_commute && nu_equivariant && nu_involutive; }
};

/// Throws NotAdapted and the solve_nu errors.
BundleCertificate assemble_bundle_involution(const SubalgebraSpec& h, const HModule& v);
/// Recomputes (i)-(iii) from the stored matrices.
bool verify_bundle_certificate(const BundleCertificate& c);

// Numerical side -------------------------------------------------------------

/// Point of the model G x V: g = prod_k exp(t_k b_k) over the Chevalley basis
/// b_0, ..., b_{n-1} (fixed order), v in V.
struct ModelPoint {
  std::vector<std::complex<double>> t;
  Eigen::VectorXcd v;
};

/// mu~(g, v) = (sigma(g), nu(v)); sigma conjugates the parameters since the
/// directions are real for the split form.
ModelPoint apply_mu(const ModelPoint& x, const AntilinearMap& nu);

/// Phi(g, v) = sum_j |<u_j, pi(g) phi(v)>_M|^2 with {u_j} M-orthonormal in W and
/// phi(v) = sum_d phi_d(v^d), phi_d in Hom_h(S^d V, W).
class PhiFunction {
 public:
  /// Throws NonOrthonormal when unitary_basis^* M unitary_basis != I.
  PhiFunction(const LieAlgebra& g, const IrrepModule& w, const QMatrix& gram, Eigen::MatrixXcd unitary_basis,
              std::vector<Eigen::MatrixXcd> phi_by_degree, std::size_t v_dim);

  const Weight& label() const { return label_; }
  double operator()(const ModelPoint& x) const;
  double value(const Eigen::MatrixXcd& pi_g, const Eigen::VectorXcd& v) const;
  Eigen::MatrixXcd pi(const ModelPoint& x) const;
  /// exp(pi(X)) for X in the compact form with real coordinates (a_beta, b_beta, c_i):
  /// sum a_beta (e_beta - f_beta) + i b_beta (e_beta + f_beta) + i c_i h_i.
  Eigen::MatrixXcd pi_compact(const std::vector<double>& coeffs) const;
  std::size_t compact_dim() const;
  const Eigen::MatrixXcd& gram() const { return gram_; }

 private:
  Weight label_;
  std::size_t npos_ = 0, rank_ = 0, torus_ = 0;
  std::vector<Eigen::MatrixXcd> pi_basis_;
  Eigen::MatrixXcd gram_;
  Eigen::MatrixXcd basis_;
  std::vector<Eigen::MatrixXcd> phi_;
  std::size_t v_dim_ = 0;
};

/// Contravariant form: rho(e)^T M = M rho(f) for every root vector, M symmetric, M(0,0) = 1.
QMatrix contravariant_form(const LieAlgebra& g, const IrrepModule& w);
/// M-orthonormal basis from a Cholesky factor.
Eigen::MatrixXcd orthonormal_basis(const QMatrix& gram);
/// S^d(V) as an h-module on the monomial basis (exponent vectors in lexicographic order).
HModule symmetric_power(const SubalgebraSpec& h, const HModule& v, std::size_t d);
/// Coordinates of v^d in that basis.
Eigen::VectorXcd power_coordinates(const Eigen::VectorXcd& v, std::size_t d);

/// Up to `count` functions over labels of increasing degree whose W admits a
/// nonzero polynomial h-map of degree <= max_v_degree.
std::vector<PhiFunction> phi_family(const BundleCertificate& c, std::size_t count, std::size_t max_v_degree = 4);

struct OrbitReport {
  std::size_t samples = 0;
  std::size_t functions = 0;
  double max_residual = 0;           // max |Phi(mu x) - Phi(x)|
  double max_relative_residual = 0;  // divided by max(1, |Phi(x)|)
  std::vector<double> residual_per_sample;
};

std::vector<ModelPoint> random_model_points(const LieAlgebra& g, std::size_t v_dim, std::size_t count, std::uint64_t seed,
                                            double scale = 0.5);
OrbitReport orbit_preservation_check(const std::vector<PhiFunction>& family, const AntilinearMap& nu,
                                     const std::vector<ModelPoint>& samples);
OrbitReport orbit_preservation_check_serial(const std::vector<PhiFunction>& family, const AntilinearMap& nu,
                                            const std::vector<ModelPoint>& samples);

/// Numeric copy of an exact antilinear map.
Eigen::MatrixXcd to_eigen(const GMatrix& m);
Eigen::MatrixXcd to_eigen(const QMatrix& m);

}  // namespace sph
