#include "sph/error.hpp"
#include "sph/sympoly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sph;

namespace {

Weight W(std::initializer_list<long> c) { return Weight{IVector(c)}; }

// Oracle: enumerate all degree-d monomials in a weight basis of V.
CharacterTable monomial_character(const RootSystem& rs, const GModule& v, std::size_t d) {
  std::vector<Weight> basis;
  for (const auto& [w, m] : v.summands)
    for (long k = 0; k < m; ++k)
      for (const auto& [mu, mm] : freudenthal_multiplicities(rs, w))
        for (long j = 0; j < mm; ++j) basis.push_back(mu);
  CharacterTable out;
  std::vector<std::size_t> idx(d, 0);
  auto emit = [&]() {
    Weight s = rs.zero_weight();
    for (auto i : idx)
      for (std::size_t c = 0; c < s.coords.size(); ++c) s.coords[c] += basis[i].coords[c];
    ++out[s];
  };
  if (d == 0) {
    ++out[rs.zero_weight()];
    return out;
  }
  // nondecreasing index tuples
  while (true) {
    emit();
    std::size_t p = d;
    while (p > 0 && idx[p - 1] == basis.size() - 1) --p;
    if (p == 0) break;
    ++idx[p - 1];
    for (std::size_t q = p; q < d; ++q) idx[q] = idx[p - 1];
  }
  return out;
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Sympoly, ParseModule) {
  auto a1 = RootSystem::build("A1");
  EXPECT_EQ(parse_gmodule(a1, "defining+defining").summands, (std::vector<std::pair<Weight, long>>{{W({1}), 2}}));
  auto a2 = RootSystem::build("A2");
  EXPECT_EQ(parse_gmodule(a2, "dual").summands.front().first, W({0, 1}));
  EXPECT_EQ(parse_gmodule(a2, "adjoint + (2,0)").summands.size(), 2u);
  auto t = RootSystem::build("T1");
  EXPECT_EQ(parse_gmodule(t, "defining").summands.front().first, W({1}));
  EXPECT_EQ(parse_gmodule(RootSystem::build("A1+T1"), "(1|-2)").summands.front().first, W({1, -2}));
  EXPECT_THROW(parse_gmodule(a2, "bogus"), Error);
  EXPECT_THROW(parse_gmodule(a2, "(1)"), Error);
  EXPECT_THROW(parse_gmodule(a2, "(-1,0)"), Error);
}

TEST(Sympoly, SymPowerExamples) {
  auto a1 = RootSystem::build("A1");
  const auto v = parse_gmodule(a1, "defining");
  EXPECT_EQ(sym_power_decompose(a1, v, 0), (Decomposition{{W({0}), 1}}));
  EXPECT_EQ(sym_power_decompose(a1, v, 5), (Decomposition{{W({5}), 1}}));
  const auto vv = parse_gmodule(a1, "defining+defining");
  EXPECT_EQ(sym_power_decompose(a1, vv, 2), (Decomposition{{W({2}), 3}, {W({0}), 1}}));
}

TEST(Sympoly, NewtonMatchesMonomialOracle) {
  struct Case {
    const char* group;
    const char* module;
    std::size_t max_d;
  };
  const std::vector<Case> cases = {{"A1", "defining+defining", 5}, {"A1", "(2)", 5},        {"A2", "defining", 5},
                                   {"A2", "adjoint", 3},            {"B2", "(0,1)", 4},      {"G2", "(1,0)", 3},
                                   {"A1xA1", "(1,1)", 4},           {"A1+T1", "(1|1)+(0|-1)", 4}, {"T1", "defining", 6},
                                   {"A3", "defining+dual", 3},      {"C3", "defining", 3},   {"B3", "(0,0,1)", 3}};
  for (const auto& c : cases) {
    auto rs = RootSystem::build(c.group);
    const auto v = parse_gmodule(rs, c.module);
    const auto chars = sym_power_characters(rs, v, c.max_d);
    for (std::size_t d = 0; d <= c.max_d; ++d) {
      ASSERT_EQ(chars[d], monomial_character(rs, v, d)) << c.group << " " << c.module << " d=" << d;
      const auto dec = decompose_character(rs, chars[d]);
      ASSERT_EQ(decomposition_dim(rs, dec), binom(v.dim(rs) + d - 1, d));
    }
  }
}

TEST(Sympoly, MFExamples) {
  auto a1 = RootSystem::build("A1");
  EXPECT_TRUE(is_mf_coordinate_ring(a1, parse_gmodule(a1, "defining"), 12).multiplicity_free);
  for (std::size_t d = 1; d <= 20; ++d) EXPECT_TRUE(is_mf_coordinate_ring(a1, parse_gmodule(a1, "defining"), d).multiplicity_free);
  const auto f = is_mf_coordinate_ring(a1, parse_gmodule(a1, "defining+defining"), 2);
  ASSERT_FALSE(f.multiplicity_free);
  EXPECT_EQ(f.witness->degree, 2u);
  EXPECT_EQ(f.witness->label, W({2}));
  EXPECT_EQ(f.witness->multiplicity, 3);
  EXPECT_EQ(f.table[2].at(W({2})), 3);
  auto t = RootSystem::build("T1");
  EXPECT_TRUE(is_mf_coordinate_ring(t, parse_gmodule(t, "defining"), 10).multiplicity_free);
  // repetition across degrees only
  const auto tr = is_mf_coordinate_ring(a1, parse_gmodule(a1, "trivial"), 3);
  ASSERT_FALSE(tr.multiplicity_free);
  EXPECT_EQ(tr.witness->degree, 1u);
  EXPECT_EQ(tr.witness->first_degree, 0u);
  // A2 defining: S^d(V*) = V(d w2) all distinct
  auto a2 = RootSystem::build("A2");
  const auto d2 = is_mf_coordinate_ring(a2, parse_gmodule(a2, "defining"), 8);
  EXPECT_TRUE(d2.multiplicity_free);
  EXPECT_EQ(d2.table[3], (Decomposition{{W({0, 3}), 1}}));
}

TEST(Sympoly, HomogeneousCrosscheck) {
  auto g = LieAlgebra::make("A1");
  const auto t = homog_coordinate_mf_crosscheck(named_subalgebra(g, "cartan"), 8);
  EXPECT_TRUE(t.multiplicity_free);
  for (long n = 0; n <= 8; ++n) {
    const auto& row = t.table[static_cast<std::size_t>(n)];
    if (n % 2 == 0) EXPECT_EQ(row.at(W({n})), 1);
    else EXPECT_TRUE(row.empty());
  }
  const auto full = homog_coordinate_mf_crosscheck(named_subalgebra(g, "full"), 8);
  EXPECT_TRUE(full.multiplicity_free);
  EXPECT_EQ(full.table[0].at(W({0})), 1);
  for (std::size_t d = 1; d <= 8; ++d) EXPECT_TRUE(full.table[d].empty());
  const auto zero = homog_coordinate_mf_crosscheck(named_subalgebra(g, "zero"), 8);
  EXPECT_FALSE(zero.multiplicity_free);
  EXPECT_THROW(homog_coordinate_mf_crosscheck(named_subalgebra(g, "nilradical"), 4), Error);

  auto gg = LieAlgebra::make("A1xA1");
  const auto diag = homog_coordinate_mf_crosscheck(named_subalgebra(gg, "diagonal"), 8);
  EXPECT_TRUE(diag.multiplicity_free);
  for (const auto& row : diag.table)
    for (const auto& [w, m] : row) {
      EXPECT_EQ(w.coords[0], w.coords[1]);  // Clebsch-Gordan: invariants only in V(n) x V(n)
      EXPECT_EQ(m, 1);
    }
  auto a2 = LieAlgebra::make("A2");
  const auto c2 = homog_coordinate_mf_crosscheck(named_subalgebra(a2, "cartan"), 4);
  ASSERT_FALSE(c2.multiplicity_free);
  // zero weight spaces: adjoint 2, V(2,2) 3; the largest multiplicity is the witness
  EXPECT_EQ(c2.table[2].at(W({1, 1})), 2);
  EXPECT_EQ(c2.witness->label, W({2, 2}));
  EXPECT_EQ(c2.witness->multiplicity, 3);
  const auto pr = homog_coordinate_mf_crosscheck(named_subalgebra(a2, "principal"), 6);
  EXPECT_TRUE(pr.multiplicity_free);
}
