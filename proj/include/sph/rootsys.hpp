#pragma once

#include "sph/linalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sph {

using IVector = std::vector<long>;

/// One simple factor of a reductive type: letter in {A, B, C, G} plus rank.
struct SimpleFactor {
  char letter = 'A';
  int rank = 1;

  std::string label() const { return std::string(1, letter) + std::to_string(rank); }
  friend bool operator==(const SimpleFactor&, const SimpleFactor&) = default;
};

/// Semisimple factors plus a central torus, e.g. "A2", "A1xA1", "A2+T1", "T1".
struct CartanType {
  std::vector<SimpleFactor> factors;
  int torus_rank = 0;

  static CartanType parse(std::string_view text);
  std::string label() const;
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

/// Cartan matrix of a simple factor, a_ij = <alpha_i^vee, alpha_j>, Bourbaki
/// numbering (B_n: alpha_n short, C_n: alpha_n long, G2: alpha_1 short).
std::vector<std::vector<int>> simple_cartan_matrix(const SimpleFactor& factor);

/// Dominant-or-not weight. The first `rank` coordinates are in the basis of
/// fundamental weights; trailing coordinates are characters of the central
/// torus and carry no dominance condition.
struct Weight {
  IVector coords;

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

class RootSystem {
 public:
  static RootSystem build(const CartanType& type);
  static RootSystem build(std::string_view label) { return build(CartanType::parse(label)); }

  const CartanType& type() const noexcept { return type_; }
  /// Semisimple rank.
  std::size_t rank() const noexcept { return cartan_.size(); }
  std::size_t torus_rank() const noexcept { return static_cast<std::size_t>(type_.torus_rank); }
  std::size_t weight_length() const noexcept { return rank() + torus_rank(); }

  const std::vector<std::vector<int>>& cartan_matrix() const noexcept { return cartan_; }
  /// Positive roots in root-lattice coordinates, ordered by height, ties
  /// broken so that earlier simple roots come first.
  const std::vector<IVector>& positive_roots() const noexcept { return positive_; }
  std::size_t num_positive_roots() const noexcept { return positive_.size(); }
  std::optional<std::size_t> root_index(const IVector& root) const;
  std::size_t simple_root_index(std::size_t i) const { return simple_index_[i]; }
  std::size_t factor_of_simple(std::size_t i) const { return factor_of_simple_[i]; }
  std::size_t factor_offset(std::size_t factor) const { return factor_offset_[factor]; }

  long height(std::size_t root) const;
  /// (alpha, alpha), normalised so the shortest simple root has length^2 2
  /// inside each simple factor.
  const Rational& root_length2(std::size_t root) const { return length2_[root]; }
  const Rational& simple_length2(std::size_t i) const { return simple_length2_[i]; }
  /// Coefficients of the coroot of a positive root in the simple coroots.
  const IVector& coroot(std::size_t root) const { return coroot_[root]; }

  /// <lambda, beta^vee> for a weight in fundamental coordinates.
  long pairing(const Weight& lambda, std::size_t root) const;
  /// Root-lattice vector expressed in fundamental-weight coordinates (A c).
  IVector root_to_weight(const IVector& root) const;
  /// Fundamental weights in root-lattice coordinates (rational).
  const std::vector<QVector>& fundamental_weights() const noexcept { return fundamental_; }
  /// Invariant form on weight coordinates (semisimple part only).
  const QMatrix& weight_form() const noexcept { return weight_form_; }
  Rational inner(const Weight& a, const Weight& b) const;
  /// Height functional <lambda, rho^vee> used to order weights.
  Rational weight_height(const Weight& lambda) const;

  bool is_dominant(const Weight& lambda) const;
  Weight zero_weight() const { return Weight{IVector(weight_length(), 0)}; }
  Weight rho() const;
  Weight fundamental(std::size_t i) const;

  Weight reflect(const Weight& lambda, std::size_t i) const;
  IVector reflect_root(const IVector& root, std::size_t i) const;
  /// Applies s_{w[0]} s_{w[1]} ... s_{w[k-1]} (rightmost first).
  Weight apply_word(const std::vector<std::size_t>& word, const Weight& lambda) const;
  IVector apply_word_to_root(const std::vector<std::size_t>& word, const IVector& root) const;

  /// All Weyl group elements as shortlex-minimal reduced words.
  std::vector<std::vector<std::size_t>> weyl_group() const;
  std::size_t weyl_order() const;

  /// Formats a weight as e.g. "2ω", "ω1+ω2", "0", "ω1|t=(1)".
  std::string format_weight(const Weight& lambda) const;

 private:
  CartanType type_;
  std::vector<std::vector<int>> cartan_;
  std::vector<IVector> positive_;
  std::vector<std::size_t> simple_index_;
  std::vector<std::size_t> factor_of_simple_;
  std::vector<std::size_t> factor_offset_;
  std::vector<Rational> length2_;
  std::vector<Rational> simple_length2_;
  std::vector<IVector> coroot_;
  std::vector<QVector> fundamental_;
  QMatrix weight_form_;
  std::vector<Rational> rho_vee_height_;  // coefficient of lambda_j in <lambda, rho^vee>
};

/// Shortlex-minimal reduced word for the longest Weyl group element.
/// Throws DegenerateInput for a pure torus.
std::vector<std::size_t> longest_weyl_element(const RootSystem& rs);

}  // namespace sph
