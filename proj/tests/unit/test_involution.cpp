#include "sph/error.hpp"
#include "sph/involution.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sph;

namespace {

SubalgebraSpec span_of(const std::shared_ptr<const LieAlgebra>& g, std::vector<LieElement> xs) {
  return SubalgebraSpec(g, std::move(xs), "custom");
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

InvolutionSpec identity_involution(const LieAlgebra& g) {
  InvolutionSpec s;
  s.matrix = QMatrix::identity(g.dim());
  return s;
}

}  // namespace

TEST(Involution, WeylThetaIsAnInvolutiveAutomorphism) {
  for (const char* type : {"A1", "A2", "B2", "G2", "A3", "A1xA1", "A1+T1", "C3"}) {
    auto g = LieAlgebra::make(type);
    const auto theta = build_weyl_involution(*g);
    EXPECT_TRUE(is_involutive(theta)) << type;
    EXPECT_TRUE(preserves_brackets(*g, theta)) << type;
    for (const auto& x : g->cartan_basis()) EXPECT_EQ(theta.apply(x), axpy(g->zero(), -1, x)) << type;
    const auto tau = build_cartan_involution(*g);
    EXPECT_TRUE(tau.antilinear);
    EXPECT_EQ(theta.matrix * tau.matrix, tau.matrix * theta.matrix);
    const auto sigma = compose(tau, theta);
    EXPECT_EQ(sigma.kind, InvolutionKind::SigmaProduct);
    EXPECT_TRUE(sigma.antilinear);
    EXPECT_EQ(sigma.matrix, QMatrix::identity(g->dim())) << type;
  }
}

TEST(Involution, WeightActionIsMinusW0) {
  auto g = LieAlgebra::make("A2");
  const auto theta = build_weyl_involution(*g);
  EXPECT_EQ(theta.act_on_weight(g->roots(), Weight{{1, 0}}), (Weight{{0, 1}}));
  auto b = LieAlgebra::make("B2");
  EXPECT_EQ(build_weyl_involution(*b).act_on_weight(b->roots(), Weight{{1, 2}}), (Weight{{1, 2}}));
}

TEST(Involution, AdaptednessExamples) {
  for (const auto& [type, sub] : std::vector<std::pair<const char*, const char*>>{
           {"A1", "cartan"}, {"A1", "full"}, {"A1xA1", "diagonal"}, {"A2", "principal"}, {"B2", "cartan"}, {"A1", "zero"}}) {
    auto g = LieAlgebra::make(type);
    const auto r = is_adapted(named_subalgebra(g, sub), build_weyl_involution(*g), 7);
    EXPECT_TRUE(r.verdict) << type << " " << sub << ": " << r.diagnostic;
    EXPECT_EQ(r.split_rank, r.rank_h);
  }
  auto a2 = LieAlgebra::make("A2");
  const auto theta = build_weyl_involution(*a2);
  EXPECT_EQ(code_of([&] { is_adapted(named_subalgebra(a2, "nilradical"), theta); }), ErrorCode::NonReductive);
  EXPECT_EQ(code_of([&] { is_adapted(named_subalgebra(a2, "borel"), theta); }), ErrorCode::NonReductive);

  // the compact direction e - f is fixed by theta
  const LieElement compact = axpy(a2->unit(a2->e(0)), -1, a2->unit(a2->f(0)));
  const auto r = is_adapted(span_of(a2, {compact}), theta);
  EXPECT_TRUE(r.theta_stable);
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(r.rank_h, 1u);
  EXPECT_EQ(r.split_rank, 0u);
  // h + e is not theta-stable
  const LieElement skew = axpy(a2->unit(a2->h(0)), 1, a2->unit(a2->e(0)));
  const auto s = is_adapted(span_of(a2, {skew}), theta);
  EXPECT_FALSE(s.theta_stable);
  EXPECT_FALSE(s.verdict);
}

TEST(Involution, ModulesOfH) {
  auto a1 = LieAlgebra::make("A1");
  const auto full = named_subalgebra(a1, "full");
  EXPECT_EQ(code_of([&] { parse_hmodule(full, "char(2)"); }), ErrorCode::DegenerateInput);
  EXPECT_EQ(code_of([&] { parse_hmodule(full, "char(x)"); }), ErrorCode::Parse);
  const auto v = parse_hmodule(full, "defining");
  EXPECT_EQ(v.dim, 2u);
  const auto ad = parse_hmodule(full, "adjoint + trivial");
  EXPECT_EQ(ad.dim, 4u);
  auto t = LieAlgebra::make("A1+T1");
  const auto c = parse_hmodule(named_subalgebra(t, "cartan"), "char(2|3)");
  EXPECT_EQ(c.dim, 1u);
  EXPECT_EQ(c.rho(named_subalgebra(t, "cartan"), t->unit(t->t(0)))(0, 0), 3);
}

TEST(Involution, SolveNuOnRationalModules) {
  auto a1 = LieAlgebra::make("A1");
  const auto theta = build_weyl_involution(*a1);
  const auto full = named_subalgebra(a1, "full");

  const auto triv = solve_nu(full, trivial_module(full), theta);
  EXPECT_EQ(triv.realified_dim, 2u);
  EXPECT_TRUE(triv.nu.is_involutive());

  const auto def = solve_nu(full, parse_hmodule(full, "defining"), theta);
  EXPECT_EQ(def.realified_dim, 2u);
  EXPECT_EQ(def.nu.matrix, GMatrix::identity(2));
  EXPECT_TRUE(def.phase_normalized);

  auto a2 = LieAlgebra::make("A2");
  const auto full2 = named_subalgebra(a2, "full");
  const auto d2 = solve_nu(full2, parse_hmodule(full2, "defining"), build_weyl_involution(*a2));
  EXPECT_EQ(d2.realified_dim, 2u);
  EXPECT_TRUE(d2.nu.is_involutive());

  const auto cartan = named_subalgebra(a1, "cartan");
  const auto w2 = solve_nu(cartan, parse_hmodule(cartan, "char(2)"), theta);
  EXPECT_EQ(w2.realified_dim, 2u);
  EXPECT_TRUE(w2.nu.is_involutive());

  // V + V: commutant M_2(C), nu = conj still works
  const auto vv = solve_nu(full, parse_hmodule(full, "defining + defining"), theta);
  EXPECT_EQ(vv.realified_dim, 8u);
  EXPECT_EQ(vv.nu.matrix, GMatrix::identity(4));

  // adjoint + trivial has a larger commutant
  EXPECT_EQ(intertwiner_space_dim(full, parse_hmodule(full, "adjoint + trivial"), theta), 4u);
}

TEST(Involution, NegativeControls) {
  // theta' = id gives sigma' = Chevalley conjugation
  auto a1 = LieAlgebra::make("A1");
  const auto full = named_subalgebra(a1, "full");
  EXPECT_EQ(code_of([&] { solve_nu(full, parse_hmodule(full, "defining"), identity_involution(*a1)); }),
            ErrorCode::QuaternionicObstruction);
  auto a2 = LieAlgebra::make("A2");
  const auto full2 = named_subalgebra(a2, "full");
  EXPECT_EQ(code_of([&] { solve_nu(full2, parse_hmodule(full2, "defining"), identity_involution(*a2)); }),
            ErrorCode::NoIntertwiner);
  // A2 with sigma' still has the dual pairing (1,0) <-> (0,1)
  EXPECT_GT(intertwiner_space_dim(full2, parse_hmodule(full2, "defining + dual"), identity_involution(*a2)), 0u);

  // theta not preserving h
  const LieElement skew = axpy(a2->unit(a2->h(0)), 1, a2->unit(a2->e(0)));
  const auto h = span_of(a2, {skew});
  EXPECT_EQ(code_of([&] { solve_nu(h, trivial_module(h), identity_involution(*a2)); }), ErrorCode::NotSubalgebra);
  EXPECT_EQ(code_of([&] { assemble_bundle_involution(h, trivial_module(h)); }), ErrorCode::NotAdapted);
}

TEST(Involution, BundleCertificates) {
  struct Case {
    const char* type;
    const char* sub;
    const char* module;
  };
  for (const auto& c : std::vector<Case>{{"A1", "cartan", "char(2)"}, {"A1", "full", "defining"}, {"A1xA1", "diagonal", "trivial"},
                                         {"A2", "principal", "trivial"}, {"A1+T1", "cartan", "char(0|1)"}}) {
    auto g = LieAlgebra::make(c.type);
    const auto h = named_subalgebra(g, c.sub);
    const auto cert = assemble_bundle_involution(h, parse_hmodule(h, c.module));
    EXPECT_TRUE(cert.passed()) << c.type << " " << c.sub;
    EXPECT_TRUE(verify_bundle_certificate(cert));
    EXPECT_EQ(cert.realified_dim, 2u);
  }
  // tampering with nu is caught
  auto a1 = LieAlgebra::make("A1");
  const auto full = named_subalgebra(a1, "full");
  auto cert = assemble_bundle_involution(full, parse_hmodule(full, "defining"));
  cert.nu.matrix(0, 1) = GaussRational(1);
  EXPECT_FALSE(verify_bundle_certificate(cert));
}

TEST(Involution, ContravariantFormAndSymmetricPowers) {
  auto a2 = LieAlgebra::make("A2");
  for (const Weight& w : {Weight{{1, 0}}, Weight{{1, 1}}, Weight{{2, 1}}}) {
    const auto m = build_module(*a2, w);
    const QMatrix gram = contravariant_form(*a2, m);
    EXPECT_EQ(gram, gram.transpose());
    for (std::size_t b = 0; b < a2->roots().num_positive_roots(); ++b)
      EXPECT_EQ(m.action[a2->e(b)].transpose() * gram, gram * m.action[a2->f(b)]);
    const auto u = orthonormal_basis(gram);
    const Eigen::MatrixXcd check = u.adjoint() * to_eigen(gram) * u;
    EXPECT_LT((check - Eigen::MatrixXcd::Identity(m.dim, m.dim)).norm(), 1e-12);
  }
  // S^d of the A1 defining module is the irreducible of highest weight d
  auto a1 = LieAlgebra::make("A1");
  const auto full = named_subalgebra(a1, "full");
  const auto v = parse_hmodule(full, "defining");
  for (std::size_t d = 0; d <= 4; ++d) {
    const auto s = symmetric_power(full, v, d);
    EXPECT_EQ(s.dim, d + 1);
    EXPECT_EQ(commutator(s.action[0], s.action[2]), s.action[1]);  // [e, f] = h
  }
  Eigen::VectorXcd x(2);
  x << std::complex<double>(1, 2), 3;
  const auto p = power_coordinates(x, 2);
  ASSERT_EQ(p.size(), 3);
  EXPECT_NEAR(std::abs(p(0) - x(0) * x(0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(p(1) - 2.0 * x(0) * x(1)), 0, 1e-12);
  EXPECT_NEAR(std::abs(p(2) - x(1) * x(1)), 0, 1e-12);
}

TEST(Involution, PhiKInvarianceAndBasisIndependence) {
  auto a1 = LieAlgebra::make("A1");
  const auto full = named_subalgebra(a1, "full");
  const auto cert = assemble_bundle_involution(full, parse_hmodule(full, "defining"));
  const auto family = phi_family(cert, 5);
  ASSERT_EQ(family.size(), 5u);
  const auto pts = random_model_points(*a1, 2, 6, 3);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (const auto& phi : family) {
    std::vector<double> k(phi.compact_dim());
    for (auto& c : k) c = u(rng);
    const auto pk = phi.pi_compact(k);
    for (const auto& x : pts) {
      const auto pg = phi.pi(x);
      const double a = phi.value(pg, x.v), b = phi.value(pk * pg, x.v);
      EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, a));
    }
  }

  // another orthonormal basis gives the same function
  const auto w = build_module(*a1, Weight{{2}});
  const QMatrix gram = contravariant_form(*a1, w);
  const Eigen::MatrixXcd u0 = orthonormal_basis(gram);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Random(3, 3);
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();
  std::vector<Eigen::MatrixXcd> phi(3);
  phi[2] = Eigen::MatrixXcd::Identity(3, 3);
  const PhiFunction f0(*a1, w, gram, u0, phi, 2), f1(*a1, w, gram, u0 * q, phi, 2);
  for (const auto& x : pts) EXPECT_NEAR(f0(x), f1(x), 1e-10 * std::max(1.0, f0(x)));
  EXPECT_THROW(PhiFunction(*a1, w, gram, 2.0 * u0, phi, 2), Error);
}

TEST(Involution, OneDimensionalPhiIsSquaredModulus) {
  auto g = LieAlgebra::make("A1+T1");
  const auto w = build_module(*g, Weight{{0, 1}});
  const QMatrix gram = contravariant_form(*g, w);
  ASSERT_EQ(gram(0, 0), 1);
  const PhiFunction phi(*g, w, gram, orthonormal_basis(gram), {Eigen::MatrixXcd(), Eigen::MatrixXcd::Identity(1, 1)}, 1);
  for (const auto& x : random_model_points(*g, 1, 5, 9)) {
    const std::complex<double> f = std::exp(x.t[g->t(0)]) * x.v(0);
    EXPECT_NEAR(phi(x), std::norm(f), 1e-12 * std::max(1.0, std::norm(f)));
  }
}

TEST(Involution, FixedPointsHaveZeroResidual) {
  auto a1 = LieAlgebra::make("A1");
  const auto full = named_subalgebra(a1, "full");
  const auto cert = assemble_bundle_involution(full, parse_hmodule(full, "defining"));
  auto pts = random_model_points(*a1, 2, 8, 5);
  for (auto& p : pts) {
    for (auto& t : p.t) t = t.real();
    p.v = p.v.real().cast<std::complex<double>>();
  }
  const auto r = orbit_preservation_check(phi_family(cert, 5), cert.nu, pts);
  EXPECT_EQ(r.max_residual, 0.0);
}

TEST(Involution, OrbitPreservation) {
  struct Case {
    const char* type;
    const char* sub;
    const char* module;
  };
  for (const auto& c : std::vector<Case>{{"A1", "cartan", "char(2)"}, {"A1", "full", "defining"}, {"A1xA1", "diagonal", "trivial"}}) {
    auto g = LieAlgebra::make(c.type);
    const auto h = named_subalgebra(g, c.sub);
    const auto cert = assemble_bundle_involution(h, parse_hmodule(h, c.module));
    const auto family = phi_family(cert, 5);
    ASSERT_GE(family.size(), 5u) << c.type << " " << c.sub;
    const auto pts = random_model_points(*g, cert.module.dim, 20, 42);
    const auto r = orbit_preservation_check(family, cert.nu, pts);
    EXPECT_EQ(r.samples, 20u);
    EXPECT_LE(r.max_relative_residual, 1e-8) << c.type << " " << c.sub;
    const auto s = orbit_preservation_check_serial(family, cert.nu, pts);
    EXPECT_EQ(s.residual_per_sample, r.residual_per_sample);
    EXPECT_EQ(s.max_residual, r.max_residual);
  }
}

TEST(Involution, SignFlippedNuIsDetected) {
  auto a1 = LieAlgebra::make("A1");
  const auto h = named_subalgebra(a1, "cartan");
  auto cert = assemble_bundle_involution(h, parse_hmodule(h, "char(2)"));
  const auto family = phi_family(cert, 5);
  AntilinearMap flipped{GaussRational(-1) * cert.nu.matrix};
  const auto pts = random_model_points(*a1, 1, 20, 42);
  EXPECT_GT(orbit_preservation_check(family, flipped, pts).max_relative_residual, 1e-3);
  // flipped nu is still an equivariant involution; only the orbit test sees it
  cert.nu = flipped;
  EXPECT_TRUE(verify_bundle_certificate(cert));
}
