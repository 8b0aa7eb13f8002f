#include "sph/spherical.hpp"

#include "sph/error.hpp"

#include <omp.h>

#include <atomic>
#include <random>
#include <sstream>

namespace sph {

std::string to_string(SphericalStatus s) {
  switch (s) {
    case SphericalStatus::Spherical: return "spherical";
    case SphericalStatus::NotSpherical: return "not_spherical";
    case SphericalStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(FibrationStatus s) {
  switch (s) {
    case FibrationStatus::FlagManifold: return "flag_manifold";
    case FibrationStatus::TorusBundleOverFlag: return "torus_bundle_over_flag";
    case FibrationStatus::NotOfThisForm: return "not_of_this_form";
  }
  return "?";
}

GroupWord SphericalCertificate::word(const LieAlgebra& g) const {
  GroupWord w;
  for (const auto& [root, t] : parameters) w.push_back(GroupFactor::exp(g.unit(g.e(root)), t));
  return w;
}

std::string SphericalVerdict::summary() const {
  std::ostringstream os;
  os << to_string(status);
  if (dimension_obstruction) os << " (dimension obstruction " << dim_b + dim_h << " < " << dim_g << ")";
  else if (status == SphericalStatus::Spherical && certificate)
    os << " (witness at trial " << certificate->trial << ", rank " << certificate->rank << " = " << dim_g << ")";
  else if (status == SphericalStatus::NotSpherical) os << " (sampling-based, " << trials << " trials)";
  else if (status == SphericalStatus::Inconclusive) os << " (" << trials << " trials)";
  return os.str();
}

SubalgebraSpec negative_borel(std::shared_ptr<const LieAlgebra> g) { return named_subalgebra(std::move(g), "borel"); }

namespace {

SphericalCertificate draw(const LieAlgebra& g, std::size_t trial, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  const long height = 1 + static_cast<long>(trial);
  std::uniform_int_distribution<long> num(-height, height - 1), den(1, height);
  SphericalCertificate c;
  c.trial = trial;
  for (std::size_t b = 0; b < g.roots().num_positive_roots(); ++b) {
    long n = num(rng);
    if (n >= 0) ++n;  // nonzero
    Rational t(n, den(rng));
    t.canonicalize();
    c.parameters.emplace_back(b, t);
  }
  return c;
}

// dim b + rank of Ad(g)h projected onto the e-coordinates (b contains every
// other basis vector).
std::size_t fast_rank(const SubalgebraSpec& h, const SphericalCertificate& c) {
  const LieAlgebra& g = h.ambient();
  const QMatrix ad = adjoint_matrix(g, c.word(g));
  const std::size_t npos = g.roots().num_positive_roots();
  std::vector<QVector> rows;
  for (const auto& x : h.basis()) {
    const QVector y = ad * x;
    rows.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(npos));
  }
  return (g.dim() - npos) + rank_of_vectors(rows, npos);
}

SphericalVerdict prepare(const SubalgebraSpec& h, std::size_t trials, std::uint64_t seed) {
  SphericalVerdict v;
  const LieAlgebra& g = h.ambient();
  v.dim_g = g.dim();
  v.dim_b = g.dim() - g.roots().num_positive_roots();
  v.dim_h = h.dim();
  v.trials = trials;
  v.seed = seed;
  if (v.dim_b + v.dim_h < v.dim_g) {
    v.status = SphericalStatus::NotSpherical;
    v.dimension_obstruction = true;
    v.trials = 0;
  }
  return v;
}

void finish(SphericalVerdict& v, std::optional<SphericalCertificate> best) {
  if (best) {
    v.status = SphericalStatus::Spherical;
    v.certificate = std::move(best);
  } else if (v.trials == 0) {
    v.status = SphericalStatus::Inconclusive;
  } else {
    v.status = SphericalStatus::NotSpherical;
    v.sampling_based = true;
  }
}

}  // namespace

SphericalVerdict is_spherical_pair_serial(const SubalgebraSpec& h, std::size_t trials, std::uint64_t seed) {
  SphericalVerdict v = prepare(h, trials, seed);
  if (v.dimension_obstruction) return v;
  std::optional<SphericalCertificate> best;
  for (std::size_t t = 0; t < trials && !best; ++t) {
    SphericalCertificate c = draw(h.ambient(), t, seed);
    c.rank = fast_rank(h, c);
    if (c.rank == v.dim_g) best = std::move(c);
  }
  finish(v, std::move(best));
  return v;
}

SphericalVerdict is_spherical_pair(const SubalgebraSpec& h, std::size_t trials, std::uint64_t seed) {
  SphericalVerdict v = prepare(h, trials, seed);
  if (v.dimension_obstruction) return v;
  std::vector<std::optional<SphericalCertificate>> found(trials);
  std::atomic<std::size_t> lowest{trials};
#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < trials; ++t) {
    if (t > lowest.load()) continue;  // a lower trial already succeeded
    SphericalCertificate c = draw(h.ambient(), t, seed);
    c.rank = fast_rank(h, c);
    if (c.rank == v.dim_g) {
      found[t] = std::move(c);
      std::size_t cur = lowest.load();
      while (t < cur && !lowest.compare_exchange_weak(cur, t)) {
      }
    }
  }
  std::optional<SphericalCertificate> best;
  for (auto& f : found)
    if (f) {
      best = std::move(f);
      break;
    }
  finish(v, std::move(best));
  return v;
}

std::size_t certificate_rank(const SubalgebraSpec& h, const SphericalCertificate& cert) {
  const LieAlgebra& g = h.ambient();
  const GroupWord word = cert.word(g);
  std::vector<QVector> rows = negative_borel(h.ambient_ptr()).basis();
  for (const auto& x : h.basis()) rows.push_back(adjoint_action(g, word, x));
  return rank_of_vectors(rows, g.dim());
}

bool verify_certificate(const SubalgebraSpec& h, const SphericalCertificate& cert) {
  return certificate_rank(h, cert) == h.ambient().dim();
}

SubalgebraSpec normalizer(const SubalgebraSpec& h) {
  const LieAlgebra& g = h.ambient();
  const std::size_t n = g.dim();
  // Functionals vanishing on h.
  const std::vector<QVector> ann = h.dim() == 0 ? std::vector<QVector>{} : nullspace(QMatrix::from_rows(h.basis(), n));
  std::vector<LieElement> result;
  if (h.dim() == 0 || ann.empty()) {
    for (std::size_t k = 0; k < n; ++k) result.push_back(g.unit(k));
  } else {
    SparseSystem sys(n);
    for (const auto& y : h.basis()) {
      // [x, y] = -ad(y) x
      const QMatrix ady = g.ad(y);
      for (const auto& phi : ann) {
        SparseSystem::Row row;
        for (std::size_t k = 0; k < n; ++k) {
          Rational s = 0;
          for (std::size_t c = 0; c < n; ++c)
            if (phi[c] != 0 && ady(c, k) != 0) s += phi[c] * ady(c, k);
          if (s != 0) row.emplace(k, s);
        }
        if (!row.empty()) sys.add_equation(std::move(row));
      }
    }
    result = sys.nullspace();
  }
  return SubalgebraSpec(h.ambient_ptr(), std::move(result), "normalizer(" + h.name() + ")");
}

FibrationReport classify_torus_fibration(const SubalgebraSpec& h) {
  FibrationReport r;
  SubalgebraSpec p = normalizer(h);
  if (!p.is_parabolic()) {
    r.status = FibrationStatus::NotOfThisForm;
    r.decisive = false;
    r.diagnostic = "normalizer of dimension " + std::to_string(p.dim()) + " is not parabolic";
    return r;
  }
  r.decisive = true;
  r.fiber_dim = p.dim() - h.dim();
  if (h.equals(p)) {
    r.status = FibrationStatus::FlagManifold;
    r.diagnostic = "h equals its parabolic normalizer";
  } else {
    const SubalgebraSpec derived = bracket_span(p, p, "derived(" + p.name() + ")");
    if (h.contains(derived)) {
      r.status = FibrationStatus::TorusBundleOverFlag;
      r.diagnostic = "[p,p] (dim " + std::to_string(derived.dim()) + ") in h in p, fiber dimension " + std::to_string(r.fiber_dim);
    } else {
      r.status = FibrationStatus::NotOfThisForm;
      r.diagnostic = "[p,p] (dim " + std::to_string(derived.dim()) + ") is not contained in h";
    }
  }
  r.parabolic = std::move(p);
  return r;
}

CrosscheckResult spherical_iff_fibration_crosscheck(const SubalgebraSpec& h, std::size_t trials, std::uint64_t seed) {
  CrosscheckResult c;
  c.fibration = classify_torus_fibration(h);
  if (!c.fibration.decisive) throw Error(ErrorCode::Inconclusive, "fibration criterion not decisive: " + c.fibration.diagnostic);
  c.spherical = is_spherical_pair(h, trials, seed);
  if (c.spherical.status == SphericalStatus::Inconclusive) throw Error(ErrorCode::Inconclusive, "sphericality inconclusive");
  const bool fib = c.fibration.status != FibrationStatus::NotOfThisForm;
  c.agree = fib == (c.spherical.status == SphericalStatus::Spherical);
  return c;
}

}  // namespace sph
