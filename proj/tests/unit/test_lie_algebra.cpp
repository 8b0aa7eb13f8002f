#include "sph/error.hpp"
#include "sph/lie_algebra.hpp"

#include <gtest/gtest.h>

using namespace sph;

namespace {

void expect_jacobi(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const auto x = g.unit(a), y = g.unit(b), z = g.unit(c);
        auto s = g.bracket(x, g.bracket(y, z));
        s = axpy(s, 1, g.bracket(y, g.bracket(z, x)));
        s = axpy(s, 1, g.bracket(z, g.bracket(x, y)));
        ASSERT_TRUE(is_zero(s)) << g.roots().type().label() << " " << a << " " << b << " " << c;
      }
}

}  // namespace

TEST(LieAlgebra, A1Relations) {
  auto g = LieAlgebra::make("A1");
  ASSERT_EQ(g->dim(), 3u);
  const auto h = g->bracket(g->unit(g->e(0)), g->unit(g->f(0)));
  EXPECT_EQ(h, g->unit(g->h(0)));
  auto he = g->bracket(g->unit(g->h(0)), g->unit(g->e(0)));
  EXPECT_EQ(he, axpy(g->zero(), 2, g->unit(g->e(0))));
  EXPECT_EQ(g->killing(g->unit(g->h(0)), g->unit(g->h(0))), 8);
}

TEST(LieAlgebra, DimensionsAndJacobi) {
  const std::vector<std::pair<std::string, std::size_t>> cases = {
      {"A1", 3}, {"A2", 8}, {"B2", 10}, {"G2", 14}, {"A1xA1", 6}, {"A1+T1", 4}, {"A3", 15}, {"C3", 21}, {"B3", 21}};
  for (const auto& [label, d] : cases) {
    auto g = LieAlgebra::make(label);
    EXPECT_EQ(g->dim(), d) << label;
    if (d <= 14) expect_jacobi(*g);
  }
}

TEST(LieAlgebra, StructureConstantsAreIntegral) {
  for (const char* label : {"A2", "B2", "G2", "B3", "C3"}) {
    auto g = LieAlgebra::make(label);
    const auto& rs = g->roots();
    for (std::size_t a = 0; a < rs.num_positive_roots(); ++a)
      for (std::size_t b = 0; b < rs.num_positive_roots(); ++b)
        for (int sa : {1, -1})
          for (int sb : {1, -1}) {
            // |N_{a,b}| = p + 1 for Chevalley bases
            const long n = g->structure_constant(a, sa, b, sb);
            IVector sum(rs.rank());
            for (std::size_t j = 0; j < sum.size(); ++j)
              sum[j] = sa * rs.positive_roots()[a][j] + sb * rs.positive_roots()[b][j];
            bool is_root = rs.root_index(sum).has_value();
            IVector neg = sum;
            for (auto& c : neg) c = -c;
            is_root = is_root || rs.root_index(neg).has_value();
            if (!is_root) {
              EXPECT_EQ(n, 0);
              continue;
            }
            long p = 0;
            IVector down(rs.rank());
            for (;; ++p) {
              for (std::size_t j = 0; j < down.size(); ++j)
                down[j] = sb * rs.positive_roots()[b][j] - (p + 1) * sa * rs.positive_roots()[a][j];
              IVector nd = down;
              for (auto& c : nd) c = -c;
              if (!rs.root_index(down) && !rs.root_index(nd)) break;
            }
            EXPECT_EQ(std::labs(n), p + 1) << label << " " << a << " " << b;
          }
  }
}

TEST(LieAlgebra, CorootsMatchRootData) {
  for (const char* label : {"B2", "G2", "C3"}) {
    auto g = LieAlgebra::make(label);
    const auto& rs = g->roots();
    for (std::size_t b = 0; b < rs.num_positive_roots(); ++b) {
      const auto hb = g->coroot_element(b);
      for (std::size_t i = 0; i < rs.rank(); ++i) EXPECT_EQ(hb[g->h(i)], rs.coroot(b)[i]) << label << b;
    }
  }
}

TEST(LieAlgebra, AdjointActionExact) {
  auto g = LieAlgebra::make("A1");
  const auto m = adjoint_matrix(*g, {GroupFactor::exp(g->unit(g->e(0)), 1)});
  // Ad(exp e) f = f + h - e
  const auto x = m * g->unit(g->f(0));
  EXPECT_EQ(x[g->f(0)], 1);
  EXPECT_EQ(x[g->h(0)], 1);
  EXPECT_EQ(x[g->e(0)], -1);
  EXPECT_THROW(adjoint_matrix(*g, {GroupFactor::exp(g->unit(g->h(0)), 1)}), Error);
  const auto s = adjoint_matrix(*g, {GroupFactor::scale(0, 3)});
  EXPECT_EQ(s(g->e(0), g->e(0)), 9);
  EXPECT_EQ(s(g->f(0), g->f(0)), Rational(1, 9));
}

TEST(Subalgebra, NamedAndChecks) {
  auto g = LieAlgebra::make("A2");
  EXPECT_EQ(named_subalgebra(g, "borel").dim(), 5u);
  EXPECT_TRUE(named_subalgebra(g, "borel").is_parabolic());
  EXPECT_FALSE(named_subalgebra(g, "borel").is_reductive());
  EXPECT_TRUE(named_subalgebra(g, "cartan").is_reductive());
  EXPECT_FALSE(named_subalgebra(g, "cartan").is_parabolic());
  const auto p = named_subalgebra(g, "principal");
  EXPECT_EQ(p.dim(), 3u);
  EXPECT_TRUE(p.is_reductive());
  EXPECT_THROW(SubalgebraSpec(g, {g->unit(g->e(0)), g->unit(g->e(1))}), Error);
  EXPECT_THROW(named_subalgebra(g, "nonsense"), Error);
  auto gg = LieAlgebra::make("A1xA1");
  const auto d = named_subalgebra(gg, "diagonal");
  EXPECT_EQ(d.dim(), 3u);
  EXPECT_TRUE(d.is_reductive());
  const auto b = named_subalgebra(g, "borel");
  EXPECT_TRUE(bracket_span(b, b).equals(named_subalgebra(g, "nilradical")));
  // upper Borel is parabolic via the longest element
  std::vector<LieElement> up = g->cartan_basis();
  for (std::size_t r = 0; r < 3; ++r) up.push_back(g->unit(g->e(r)));
  const SubalgebraSpec bu(g, up);
  EXPECT_TRUE(bu.is_parabolic());
  EXPECT_EQ(bu.parabolic_twist().size(), 3u);
}
