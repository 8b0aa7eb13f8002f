#include "sph/catalog.hpp"

#include "sph/error.hpp"
#include "sph/involution.hpp"
#include "sph/spherical.hpp"

#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace sph {

using nlohmann::json;

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::TrivialDimensionCount: return "trivial_dimension_count";
    case Provenance::DerivedOracle: return "derived_oracle";
    case Provenance::PaperStatement: return "paper_statement";
  }
  return "?";
}

Provenance parse_provenance(const std::string& s) {
  if (s == "trivial_dimension_count") return Provenance::TrivialDimensionCount;
  if (s == "derived_oracle") return Provenance::DerivedOracle;
  if (s == "paper_statement") return Provenance::PaperStatement;
  throw Error(ErrorCode::Provenance, "unknown provenance '" + s + "'");
}

const std::vector<std::string>& catalog_checks() {
  static const std::vector<std::string> checks = {"spherical", "mf_truncated", "fibration", "adapted", "involution"};
  return checks;
}

SubalgebraSpec SubalgebraRef::expand(std::shared_ptr<const LieAlgebra> g) const {
  if (span.empty()) return named_subalgebra(std::move(g), name);
  for (const auto& v : span)
    if (v.size() != g->dim())
      throw Error(ErrorCode::Parse, "spanning vector of length " + std::to_string(v.size()) + " in a " + std::to_string(g->dim()) +
                                        "-dimensional algebra");
  return SubalgebraSpec(std::move(g), span, name);
}

namespace {

std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else ++col;
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Most recent "id": "..." before the failure, to name the entry being read.
std::string entry_before(const std::string& text, std::size_t byte) {
  const std::string key = "\"id\"";
  const std::size_t at = text.rfind(key, std::min(byte, text.size()));
  if (at == std::string::npos) return "";
  const std::size_t open = text.find('"', text.find(':', at) + 1);
  const std::size_t close = open == std::string::npos ? open : text.find('"', open + 1);
  if (close == std::string::npos || close > byte) return "";
  return text.substr(open + 1, close - open - 1);
}

std::string require_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_string()) throw Error(ErrorCode::Parse, where + ": missing string field '" + key + "'");
  return j.at(key).get<std::string>();
}

CatalogEntry entry_from_json(const json& j, std::size_t index) {
  std::string where = "entry #" + std::to_string(index);
  if (!j.is_object()) throw Error(ErrorCode::Parse, where + " is not an object");
  CatalogEntry e;
  e.id = require_string(j, "id", where);
  where = "entry '" + e.id + "'";
  e.group = require_string(j, "group", where);
  if (!j.contains("subalgebra")) throw Error(ErrorCode::Parse, where + ": missing field 'subalgebra'");
  const json& s = j.at("subalgebra");
  if (s.is_string()) e.subalgebra.name = s.get<std::string>();
  else if (s.is_object()) {
    e.subalgebra.name = require_string(s, "name", where);
    if (!s.contains("span") || !s.at("span").is_array()) throw Error(ErrorCode::Parse, where + ": subalgebra needs a 'span' array");
    for (const auto& v : s.at("span")) {
      QVector x;
      for (const auto& c : v) {
        if (!c.is_string() && !c.is_number_integer()) throw Error(ErrorCode::Parse, where + ": span entries are rationals");
        x.push_back(c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>()));
      }
      e.subalgebra.span.push_back(std::move(x));
    }
    if (e.subalgebra.span.empty()) throw Error(ErrorCode::Parse, where + ": empty span");
  } else throw Error(ErrorCode::Parse, where + ": 'subalgebra' must be a name or an object");
  if (j.contains("module")) e.module = require_string(j, "module", where);
  if (j.contains("bundle_module")) e.bundle_module = require_string(j, "bundle_module", where);
  if (j.contains("expected")) {
    if (!j.at("expected").is_object()) throw Error(ErrorCode::Parse, where + ": 'expected' must be an object");
    for (const auto& [check, val] : j.at("expected").items()) {
      if (std::find(catalog_checks().begin(), catalog_checks().end(), check) == catalog_checks().end())
        throw Error(ErrorCode::UnknownSymbol, where + ": unknown check '" + check + "'");
      const std::string w = where + ", check '" + check + "'";
      if (!val.is_object()) throw Error(ErrorCode::Parse, w + ": expectation must be an object");
      Expectation x;
      x.verdict = require_string(val, "verdict", w);
      if (!val.contains("provenance")) throw Error(ErrorCode::Provenance, w + ": expectation without provenance");
      try {
        x.provenance = parse_provenance(require_string(val, "provenance", w));
      } catch (const Error& err) {
        throw Error(ErrorCode::Provenance, w + ": " + err.what());
      }
      if (val.contains("note")) x.note = require_string(val, "note", w);
      e.expected.emplace(check, std::move(x));
    }
  }
  // expansion check
  try {
    auto g = LieAlgebra::make(e.group);
    const SubalgebraSpec h = e.subalgebra.expand(g);
    if (e.module) parse_gmodule(g->roots(), *e.module);
    if (e.bundle_module) parse_hmodule(h, *e.bundle_module);
  } catch (const Error& err) {
    throw Error(err.code(), where + ": " + err.what());
  }
  return e;
}

json entry_to_json(const CatalogEntry& e) {
  json j;
  j["id"] = e.id;
  j["group"] = e.group;
  if (e.subalgebra.span.empty()) j["subalgebra"] = e.subalgebra.name;
  else {
    json span = json::array();
    for (const auto& v : e.subalgebra.span) {
      json row = json::array();
      for (const auto& c : v) row.push_back(to_string(c));
      span.push_back(row);
    }
    j["subalgebra"] = {{"name", e.subalgebra.name}, {"span", span}};
  }
  if (e.module) j["module"] = *e.module;
  if (e.bundle_module) j["bundle_module"] = *e.bundle_module;
  json ex = json::object();
  for (const auto& [check, x] : e.expected) {
    json v = {{"verdict", x.verdict}, {"provenance", to_string(x.provenance)}};
    if (!x.note.empty()) v["note"] = x.note;
    ex[check] = v;
  }
  j["expected"] = ex;
  return j;
}

}  // namespace

std::vector<CatalogEntry> parse_catalog(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::string entry = entry_before(text, e.byte);
    throw Error(ErrorCode::Parse, "catalog is not valid JSON at " + position_of(text, e.byte == 0 ? 0 : e.byte - 1) +
                                      (entry.empty() ? "" : " (inside or after entry '" + entry + "')"));
  }
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "catalog must be a JSON object");
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer())
    throw Error(ErrorCode::Parse, "catalog has no integer 'schema_version'");
  if (doc.at("schema_version").get<int>() != kCatalogSchemaVersion)
    throw Error(ErrorCode::Parse, "unsupported catalog schema_version " + std::to_string(doc.at("schema_version").get<int>()));
  if (!doc.contains("entries") || !doc.at("entries").is_array()) throw Error(ErrorCode::Parse, "catalog has no 'entries' array");
  std::vector<CatalogEntry> out;
  std::set<std::string> ids;
  std::size_t index = 0;
  for (const auto& j : doc.at("entries")) {
    CatalogEntry e = entry_from_json(j, index++);
    if (!ids.insert(e.id).second) throw Error(ErrorCode::Parse, "duplicate entry id '" + e.id + "'");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open catalog '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_catalog(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string serialize_catalog(const std::vector<CatalogEntry>& entries) {
  json doc;
  doc["schema_version"] = kCatalogSchemaVersion;
  doc["entries"] = json::array();
  for (const auto& e : entries) doc["entries"].push_back(entry_to_json(e));
  return doc.dump(2) + "\n";
}

bool equivalent(const CatalogEntry& a, const CatalogEntry& b) {
  if (a.id != b.id || a.group != b.group || a.expected != b.expected || a.bundle_module != b.bundle_module) return false;
  auto ga = LieAlgebra::make(a.group);
  if (!a.subalgebra.expand(ga).equals(b.subalgebra.expand(ga))) return false;
  if (a.module.has_value() != b.module.has_value()) return false;
  if (a.module) {
    auto sa = parse_gmodule(ga->roots(), *a.module).summands, sb = parse_gmodule(ga->roots(), *b.module).summands;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  return true;
}

std::string default_catalog_path() { return std::string(SPH_DATA_DIR) + "/catalog.json"; }


CheckResult run_check(const CatalogEntry& e, const std::string& check, const RunOptions& opt) {
  CheckResult r;
  r.entry = e.id;
  r.check = check;
  if (auto it = e.expected.find(check); it != e.expected.end()) r.expected = it->second.verdict;
  try {
    auto g = LieAlgebra::make(e.group);
    const SubalgebraSpec h = e.subalgebra.expand(g);
    if (check == "spherical") {
      const auto v = is_spherical_pair(h, opt.trials, opt.seed);
      r.computed = to_string(v.status);
      r.detail = v.summary();
    } else if (check == "fibration") {
      const auto f = classify_torus_fibration(h);
      r.computed = f.decisive ? to_string(f.status) : "not_decisive";
      r.detail = f.diagnostic;
    } else if (check == "mf_truncated") {
      if (e.module) {
        const auto v = is_mf_coordinate_ring(g->roots(), parse_gmodule(g->roots(), *e.module), opt.mf_degree);
        r.computed = v.multiplicity_free ? "multiplicity_free" : "fails";
        r.detail = "C[V]: " + describe(g->roots(), v);
      } else if (h.is_reductive()) {
        const auto v = homog_coordinate_mf_crosscheck(h, opt.mf_degree);
        r.computed = v.multiplicity_free ? "multiplicity_free" : "fails";
        r.detail = "C[G/H]: " + describe(g->roots(), v);
      } else {
        r.computed = "n/a";
        r.detail = "H is not reductive";
      }
    } else if (check == "adapted" || check == "involution") {
      if (!h.is_reductive()) {
        r.computed = "n/a";
        r.detail = "H is not reductive";
      } else if (check == "adapted") {
        const auto a = is_adapted(h, build_weyl_involution(*g), opt.seed);
        r.computed = a.verdict ? "adapted" : "not_adapted";
        r.detail = a.diagnostic;
      } else {
        const std::string mod = e.bundle_module.value_or("trivial");
        const auto c = assemble_bundle_involution(h, parse_hmodule(h, mod));
        r.computed = c.passed() && verify_bundle_certificate(c) ? "pass" : "fail";
        r.detail = "V = " + mod + ", realified intertwiner space of dimension " + std::to_string(c.realified_dim);
      }
    } else {
      throw Error(ErrorCode::Usage, "unknown check '" + check + "'");
    }
  } catch (const Error& err) {
    if (err.code() == ErrorCode::Usage) throw;
    if (err.code() == ErrorCode::DimensionCap) {
      r.computed = "skipped";
      r.skipped = true;
    } else {
      r.computed = std::string(err.code_name());
    }
    r.detail = err.what();
  }
  r.agree = r.skipped || r.expected.empty() || r.computed == r.expected;
  return r;
}

CatalogRun run_catalog(const std::vector<CatalogEntry>& entries, const std::vector<std::string>& checks, const RunOptions& opt) {
  for (const auto& c : checks)
    if (std::find(catalog_checks().begin(), catalog_checks().end(), c) == catalog_checks().end())
      throw Error(ErrorCode::Usage, "unknown check '" + c + "'");
  std::vector<const CatalogEntry*> order;
  for (const auto& e : entries) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

  CatalogRun run;
  run.rows.resize(order.size() * checks.size());
  std::vector<std::string> errors(run.rows.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < run.rows.size(); ++k) {
    try {
      run.rows[k] = run_check(*order[k / checks.size()], checks[k % checks.size()], opt);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k)
    if (!errors[k].empty()) {
      run.rows[k].entry = order[k / checks.size()]->id;
      run.rows[k].check = checks[k % checks.size()];
      run.rows[k].computed = "E_INTERNAL";
      run.rows[k].detail = errors[k];
      run.rows[k].agree = false;
    }
  for (const auto& r : run.rows) {
    if (r.skipped) ++run.skipped;
    else if (r.expected.empty()) ++run.unchecked;
    else if (r.agree) ++run.agreements;
    else ++run.disagreements;
  }
  return run;
}

}  // namespace sph
