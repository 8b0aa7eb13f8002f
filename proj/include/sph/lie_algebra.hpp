#pragma once

#include "sph/linalg.hpp"
#include "sph/rootsys.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sph {

/// Coordinates over the Chevalley basis of a LieAlgebra.
using LieElement = QVector;

/// Reductive Lie algebra with a Chevalley basis.
///
/// Basis order: e_beta for positive roots (root order), h_i for simple
/// coroots, t_k for the central torus, f_beta for positive roots. Root vectors
/// of non-simple roots are fixed by e_beta = [e_i, e_gamma] / (p + 1) with
/// alpha_i the first simple root such that gamma = beta - alpha_i is a root
/// (extraspecial pair, positive sign), and f_beta = [f_gamma, f_i] / (p + 1).
class LieAlgebra {
 public:
  enum class Kind { E, H, T, F };
  struct BasisLabel {
    Kind kind;
    std::size_t index;  // positive-root index for E/F, simple index for H, torus index for T
  };
  /// Extraspecial decomposition of a non-simple positive root.
  struct RootStep {
    std::size_t simple = 0;   // i
    std::size_t rest = 0;     // index of gamma = beta - alpha_i
    long divisor = 1;         // p + 1
  };

  explicit LieAlgebra(RootSystem rs);
  static std::shared_ptr<const LieAlgebra> make(std::string_view type_label);

  const RootSystem& roots() const noexcept { return rs_; }
  std::size_t dim() const noexcept { return labels_.size(); }
  std::size_t rank() const noexcept { return rs_.rank() + rs_.torus_rank(); }
  const BasisLabel& label(std::size_t k) const { return labels_[k]; }
  std::string basis_name(std::size_t k) const;

  std::size_t e(std::size_t root) const { return root; }
  std::size_t h(std::size_t i) const { return rs_.num_positive_roots() + i; }
  std::size_t t(std::size_t k) const { return rs_.num_positive_roots() + rs_.rank() + k; }
  std::size_t f(std::size_t root) const { return rs_.num_positive_roots() + rank() + root; }
  LieElement unit(std::size_t k) const;
  LieElement zero() const { return LieElement(dim()); }

  /// Decomposition used to generate root vector beta, or nullopt for simple roots.
  const std::optional<RootStep>& root_step(std::size_t root) const { return steps_[root]; }

  /// Structure constants of basis elements: [b_a, b_b] = sum_c bracket(a,b)[c] b_c.
  const std::vector<std::pair<std::size_t, Rational>>& basis_bracket(std::size_t a, std::size_t b) const {
    return table_[a * dim() + b];
  }
  LieElement bracket(const LieElement& x, const LieElement& y) const;
  QMatrix ad(const LieElement& x) const;
  const QMatrix& ad_basis(std::size_t k) const { return ad_basis_[k]; }

  /// N_{a,b} for signed roots given as (positive root index, sign): [X_a, X_b] = N X_{a+b}.
  long structure_constant(std::size_t a, int sign_a, std::size_t b, int sign_b) const;
  /// Element h_beta = [e_beta, f_beta] expressed over the basis.
  LieElement coroot_element(std::size_t root) const;

  Rational killing(const LieElement& x, const LieElement& y) const;
  /// Killing form on the semisimple part plus the standard form on the torus;
  /// nondegenerate and invariant.
  Rational invariant_form(const LieElement& x, const LieElement& y) const;

  /// Cartan subalgebra basis vectors (h_i and t_k).
  std::vector<LieElement> cartan_basis() const;

 private:
  RootSystem rs_;
  std::vector<BasisLabel> labels_;
  std::vector<std::optional<RootStep>> steps_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> table_;
  std::vector<QMatrix> ad_basis_;
};

/// One factor of a group element acting through Ad: either exp(t x) for an
/// ad-nilpotent x, or the cocharacter scaling c^{h} for a Cartan basis
/// element (h_i or t_k) and nonzero rational c.
struct GroupFactor {
  enum class Kind { Exp, TorusScale };
  Kind kind = Kind::Exp;
  LieElement direction;       // Exp
  Rational parameter;         // t for Exp, c for TorusScale
  std::size_t cartan_index = 0;  // TorusScale: index into cartan_basis()

  static GroupFactor exp(LieElement x, Rational t) { return {Kind::Exp, std::move(x), std::move(t), 0}; }
  static GroupFactor scale(std::size_t cartan_index, Rational c) { return {Kind::TorusScale, {}, std::move(c), cartan_index}; }
};

/// g = factors[0] * factors[1] * ... ; Ad(g) applies the last factor first.
using GroupWord = std::vector<GroupFactor>;

/// Exact Ad(g) x. Throws NonNilpotent when an Exp direction is not ad-nilpotent.
LieElement adjoint_action(const LieAlgebra& g, const GroupWord& word, const LieElement& x);
/// Matrix of Ad(g) on the Chevalley basis.
QMatrix adjoint_matrix(const LieAlgebra& g, const GroupWord& word);

/// A subalgebra given by a spanning set; stored with an echelon basis.
class SubalgebraSpec {
 public:
  /// Throws NotSubalgebra if the span is not closed under the bracket.
  SubalgebraSpec(std::shared_ptr<const LieAlgebra> ambient, std::vector<LieElement> spanning_set,
                 std::string name = "custom");

  const LieAlgebra& ambient() const noexcept { return *ambient_; }
  std::shared_ptr<const LieAlgebra> ambient_ptr() const noexcept { return ambient_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<LieElement>& spanning_set() const noexcept { return spanning_; }
  /// Echelon basis of the span.
  const std::vector<LieElement>& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.size(); }

  bool contains(const LieElement& x) const;
  bool contains(const SubalgebraSpec& other) const;
  bool equals(const SubalgebraSpec& other) const { return dim() == other.dim() && contains(other); }
  std::optional<QVector> coordinates(const LieElement& x) const;

  /// Killing-type invariant form restricted to the subalgebra is nondegenerate.
  bool is_reductive() const noexcept { return reductive_; }
  /// Contains a Borel subalgebra w(b^-) for some Weyl group element w (and
  /// hence the standard Cartan).
  bool is_parabolic() const noexcept { return parabolic_; }
  /// Weyl word w with w(b^-) inside the subalgebra, when parabolic.
  const std::vector<std::size_t>& parabolic_twist() const noexcept { return twist_; }

  /// ad of the basis elements restricted to the subalgebra, in basis coordinates.
  QMatrix restricted_ad(const LieElement& x) const;

 private:
  std::shared_ptr<const LieAlgebra> ambient_;
  std::string name_;
  std::vector<LieElement> spanning_;
  std::vector<LieElement> basis_;
  bool reductive_ = false;
  bool parabolic_ = false;
  std::vector<std::size_t> twist_;
};

/// Standard subalgebras by name: "full", "zero", "cartan", "borel" (b^-),
/// "nilradical" ([b^-, b^-]), "diagonal" (two isomorphic simple factors),
/// "principal" (principal sl2). Throws UnknownSymbol.
SubalgebraSpec named_subalgebra(std::shared_ptr<const LieAlgebra> g, const std::string& name);

/// [a, b] spanned subalgebra (derived algebra when a == b).
SubalgebraSpec bracket_span(const SubalgebraSpec& a, const SubalgebraSpec& b, std::string name = "derived");

}  // namespace sph
