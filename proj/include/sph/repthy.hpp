#pragma once

// Finite-dimensional irreducible modules: dimensions, weight multiplicities,
// explicit generator matrices, duals and tensor products.

#include "sph/lie_algebra.hpp"
#include "sph/linalg.hpp"
#include "sph/rootsys.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace sph {

/// Weight -> multiplicity. Weights carry the torus charges as trailing coordinates.
using CharacterTable = std::map<Weight, long>;
/// Highest weight -> multiplicity of that irreducible.
using Decomposition = std::map<Weight, long>;

inline constexpr std::size_t kDefaultModuleCap = 64;

/// Weyl dimension formula. Throws NotDominant.
std::size_t weyl_dim(const RootSystem& rs, const Weight& lambda);

/// Weight multiplicities of V(lambda) by Freudenthal's recursion. Throws NotDominant.
CharacterTable freudenthal_multiplicities(const RootSystem& rs, const Weight& lambda);

/// V(lambda) with a matrix for every element of the Chevalley basis of g.
struct IrrepModule {
  Weight label;
  std::size_t dim = 0;
  std::vector<Weight> weight_basis;  // weight of each basis vector; basis graded by depth
  std::vector<QMatrix> action;       // action[k] = rho(b_k), b_k the k-th basis element of g

  QMatrix rho(const LieElement& x) const;
};

/// Throws NotDominant, DimensionCap (cap == 0 disables the cap).
IrrepModule build_module(const LieAlgebra& g, const Weight& lambda, std::size_t cap = kDefaultModuleCap);

/// Chevalley-Serre relations on the simple generators, checked exactly. They
/// present g, so passing means rho is a representation.
bool satisfies_serre_relations(const LieAlgebra& g, const IrrepModule& m);
/// Exhaustive check of rho([b_a, b_b]) = [rho b_a, rho b_b] over all basis pairs.
bool satisfies_all_brackets(const LieAlgebra& g, const IrrepModule& m);

/// -w0(lambda) on the semisimple part, negated torus charges.
Weight dual_label(const RootSystem& rs, const Weight& lambda);

CharacterTable character_product(const CharacterTable& a, const CharacterTable& b);
CharacterTable character_sum(const CharacterTable& a, const CharacterTable& b, long scale = 1);
/// Adams operation: every weight multiplied by k.
CharacterTable adams(const CharacterTable& a, long k);

/// Splits a character into irreducibles by repeatedly removing the character of
/// a highest remaining weight. Throws Internal if the input is not a character.
Decomposition decompose_character(const RootSystem& rs, CharacterTable chi);

Decomposition tensor_decompose(const RootSystem& rs, const Weight& lambda, const Weight& mu);

/// Total dimension of a decomposition.
std::size_t decomposition_dim(const RootSystem& rs, const Decomposition& d);

}  // namespace sph
