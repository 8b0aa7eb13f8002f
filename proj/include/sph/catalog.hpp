#pragma once

// Shipped test pairs (G, H), modules and expected verdicts, and a runner that
// recomputes every check and compares.

#include "sph/lie_algebra.hpp"
#include "sph/sympoly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sph {

inline constexpr int kCatalogSchemaVersion = 1;

enum class Provenance { TrivialDimensionCount, DerivedOracle, PaperStatement };
std::string to_string(Provenance p);
/// Throws Provenance for anything else.
Provenance parse_provenance(const std::string& s);

struct Expectation {
  std::string verdict;
  Provenance provenance = Provenance::DerivedOracle;
  std::string note;

  friend bool operator==(const Expectation&, const Expectation&) = default;
};

/// Subalgebra as a symbolic name or an explicit spanning set (Chevalley coordinates).
struct SubalgebraRef {
  std::string name;
  std::vector<QVector> span;  // empty: `name` is symbolic

  SubalgebraSpec expand(std::shared_ptr<const LieAlgebra> g) const;
};

struct CatalogEntry {
  std::string id;
  std::string group;
  SubalgebraRef subalgebra;
  std::optional<std::string> module;         // G-module for the coordinate-ring check
  std::optional<std::string> bundle_module;  // H-module for the involution check (default trivial)
  std::map<std::string, Expectation> expected;
};

/// The checks a runner knows about.
const std::vector<std::string>& catalog_checks();

/// Parses and validates (every group, subalgebra and module expands). Throws
/// Parse with line and column for malformed text, and Parse / UnknownSymbol /
/// Provenance naming the offending entry.
std::vector<CatalogEntry> parse_catalog(const std::string& text);
std::vector<CatalogEntry> load_catalog(const std::string& path);
std::string serialize_catalog(const std::vector<CatalogEntry>& entries);
/// Entry-wise equality after expansion (subalgebras compared as subspaces).
bool equivalent(const CatalogEntry& a, const CatalogEntry& b);

/// Path of the shipped catalog.
std::string default_catalog_path();

struct RunOptions {
  std::size_t trials = 32;
  std::uint64_t seed = 0;
  std::size_t mf_degree = 8;
};

struct CheckResult {
  std::string entry;
  std::string check;
  std::string computed;   // verdict, "n/a" when the check does not apply, or "skipped"
  std::string expected;   // empty when the catalog has no expectation
  bool agree = true;
  bool skipped = false;
  std::string detail;
};

struct CatalogRun {
  std::vector<CheckResult> rows;  // ordered by entry id, then check order
  std::size_t agreements = 0, disagreements = 0, skipped = 0, unchecked = 0;

  bool ok() const { return disagreements == 0; }
};

/// Single check on one entry; the verdict strings are those used in the catalog.
CheckResult run_check(const CatalogEntry& e, const std::string& check, const RunOptions& opt);
/// Entries run concurrently; unknown check names throw Usage.
CatalogRun run_catalog(const std::vector<CatalogEntry>& entries, const std::vector<std::string>& checks,
                       const RunOptions& opt = {});

}  // namespace sph
