#pragma once

// sphtool front end as a library call so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace sph {

/// Exit codes: 0 success (or no catalog disagreement), 1 disagreement or
/// failed verification or computation error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Environment variable naming the catalog used when --path is absent.
inline constexpr const char* kCatalogEnv = "SPHTOOL_CATALOG";

}  // namespace sph
