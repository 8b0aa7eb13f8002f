#pragma once

// Truncated coordinate rings C[V] = sum_d S^d(V*) and multiplicity-freeness.

#include "sph/lie_algebra.hpp"
#include "sph/repthy.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sph {

/// A module given as a direct sum of irreducibles.
struct GModule {
  std::vector<std::pair<Weight, long>> summands;

  std::size_t dim(const RootSystem& rs) const;
  CharacterTable character(const RootSystem& rs) const;
  GModule dual(const RootSystem& rs) const;
  std::string format(const RootSystem& rs) const;
  friend bool operator==(const GModule&, const GModule&) = default;
};

/// Parses "+"-separated summands: "trivial", "defining" (first fundamental
/// weight of the first simple factor, torus charges 1), "dual" (dual of
/// defining), "adjoint", or an explicit coordinate vector "(1,0)" / "(1,0|2)".
/// A leading "k*" repeats a summand. Throws Parse / UnknownSymbol / NotDominant.
GModule parse_gmodule(const RootSystem& rs, std::string_view text);

/// Characters of S^0(V), ..., S^D(V) by Newton's identities over Adams operations.
std::vector<CharacterTable> sym_power_characters(const RootSystem& rs, const GModule& v, std::size_t max_degree);
Decomposition sym_power_decompose(const RootSystem& rs, const GModule& v, std::size_t degree);

struct MFWitness {
  std::size_t degree = 0;
  Weight label;
  long multiplicity = 0;
  /// Set when the repetition is across two degrees; the earlier degree.
  std::optional<std::size_t> first_degree;
};

struct MFVerdict {
  bool multiplicity_free = false;  // "multiplicity_free_up_to_D" vs "fails"
  std::size_t degree_bound = 0;
  std::optional<MFWitness> witness;
  std::vector<Decomposition> table;       // per degree (or per label sum for the crosscheck)
  std::vector<Weight> skipped;            // labels not examined (dimension cap)

  std::string verdict_name() const { return multiplicity_free ? "multiplicity_free_up_to_D" : "fails"; }
};

inline constexpr std::size_t kDefaultDegreeBound = 8;

/// "multiplicity free up to degree D" or "fails at degree d, label L, multiplicity m".
std::string describe(const RootSystem& rs, const MFVerdict& v);

/// MF verdict for C[V] up to degree D. Within-degree repetitions take
/// precedence (largest multiplicity, lowest degree); otherwise the first label
/// met again in a later degree.
MFVerdict is_mf_coordinate_ring(const RootSystem& rs, const GModule& v, std::size_t max_degree = kDefaultDegreeBound);

/// Multiplicity of V(lambda) in C[G/H] as dim of the h-invariants of V(lambda)*,
/// for every label up to degree D: all dominant labels with coordinate sum <= D
/// and torus charges in [-D, D], or, when an ambient module is given, the labels
/// occurring in C[V] up to degree D. Labels above the module cap are skipped.
/// Throws NonReductive.
MFVerdict homog_coordinate_mf_crosscheck(const SubalgebraSpec& h, std::size_t max_degree = kDefaultDegreeBound,
                                         const std::optional<GModule>& ambient_module = std::nullopt,
                                         std::size_t cap = kDefaultModuleCap);

/// dim of {v : rho(x) v = 0 for all x in h}.
std::size_t invariant_dimension(const IrrepModule& m, const SubalgebraSpec& h);

}  // namespace sph
