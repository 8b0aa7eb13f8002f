#pragma once

// Irreducible highest-weight modules from Cartan data alone.
//
// V(lambda) is built weight space by weight space, descending from lambda.
// Candidate vectors f_i b are identified with their raising signature
// (e_1 u, ..., e_r u); below the top, a vector of the irreducible quotient of
// the Verma module is zero exactly when every e_j kills it, so independent
// signatures give a basis. Only the Chevalley generators e_i, f_i of simple
// roots are produced here; everything else is generated by brackets.

#include "sph/linalg.hpp"
#include "sph/rootsys.hpp"

#include <cstddef>
#include <vector>

namespace sph {

struct SimpleGeneratorModule {
  std::size_t dim = 0;
  std::vector<QMatrix> e;          // one per simple root
  std::vector<QMatrix> f;
  std::vector<IVector> weights;    // weight (fundamental coordinates) of each basis vector
  std::vector<std::size_t> depth;  // height distance from the highest weight
};

/// cap == 0 means no dimension cap.
SimpleGeneratorModule construct_highest_weight(const std::vector<std::vector<int>>& cartan,
                                               const IVector& lambda, std::size_t cap = 0);

}  // namespace sph
