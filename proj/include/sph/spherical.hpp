#pragma once

// Sphericality of (g, h) through the open-orbit rank condition
// dim(b + Ad(g) h) = dim g with b the negative Borel, and the
// flag-manifold / torus-fibration classification through normalizers.

#include "sph/lie_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sph {

enum class SphericalStatus { Spherical, NotSpherical, Inconclusive };
std::string to_string(SphericalStatus s);

/// g = prod_k exp(t_k e_{beta_k}) in the unipotent radical of the positive Borel.
struct SphericalCertificate {
  std::vector<std::pair<std::size_t, Rational>> parameters;  // (positive root index, t)
  std::size_t trial = 0;
  std::size_t rank = 0;  // dim(b + Ad(g) h)

  GroupWord word(const LieAlgebra& g) const;
};

struct SphericalVerdict {
  SphericalStatus status = SphericalStatus::Inconclusive;
  std::size_t dim_g = 0, dim_b = 0, dim_h = 0;
  bool dimension_obstruction = false;
  bool sampling_based = false;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<SphericalCertificate> certificate;

  std::string summary() const;
};

inline constexpr std::size_t kDefaultTrials = 32;

/// Negative Borel b = span(h_i, t_k, f_beta).
SubalgebraSpec negative_borel(std::shared_ptr<const LieAlgebra> g);

/// Trials are independent and may run concurrently; the lowest successful
/// trial index is reported, so the result does not depend on scheduling.
SphericalVerdict is_spherical_pair(const SubalgebraSpec& h, std::size_t trials = kDefaultTrials, std::uint64_t seed = 0);
/// Same search, one trial at a time.
SphericalVerdict is_spherical_pair_serial(const SubalgebraSpec& h, std::size_t trials = kDefaultTrials, std::uint64_t seed = 0);

/// Recomputes rank[b ; Ad(g) h] from scratch.
std::size_t certificate_rank(const SubalgebraSpec& h, const SphericalCertificate& cert);
bool verify_certificate(const SubalgebraSpec& h, const SphericalCertificate& cert);

/// {x : [x, h] in h}.
SubalgebraSpec normalizer(const SubalgebraSpec& h);

enum class FibrationStatus { FlagManifold, TorusBundleOverFlag, NotOfThisForm };
std::string to_string(FibrationStatus s);

struct FibrationReport {
  FibrationStatus status = FibrationStatus::NotOfThisForm;
  std::optional<SubalgebraSpec> parabolic;  // the normaliser, when parabolic
  std::size_t fiber_dim = 0;
  /// The normaliser is parabolic, so the status is a statement about P' in H in P.
  bool decisive = false;
  std::string diagnostic;
};

FibrationReport classify_torus_fibration(const SubalgebraSpec& h);

struct CrosscheckResult {
  bool agree = false;
  SphericalVerdict spherical;
  FibrationReport fibration;
};

/// Throws Inconclusive when the fibration side is not decisive or the
/// sphericality side is inconclusive.
CrosscheckResult spherical_iff_fibration_crosscheck(const SubalgebraSpec& h, std::size_t trials = kDefaultTrials,
                                                    std::uint64_t seed = 0);

}  // namespace sph
