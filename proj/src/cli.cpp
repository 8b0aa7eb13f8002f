#include "sph/cli.hpp"

#include "sph/catalog.hpp"
#include "sph/error.hpp"
#include "sph/harmonic.hpp"
#include "sph/involution.hpp"
#include "sph/spherical.hpp"
#include "sph/sympoly.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sph {

using nlohmann::json;

namespace {

struct Common {
  std::string group;
  std::string subalgebra = "cartan";
  std::string span;
  std::string module;
  std::size_t degree = kDefaultDegreeBound;
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = 0;
  std::string format = "table";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

SubalgebraSpec subalgebra_of(const Common& c, std::shared_ptr<const LieAlgebra> g) {
  if (c.span.empty()) return named_subalgebra(std::move(g), c.subalgebra);
  std::vector<LieElement> vs;
  for (const auto& row : split(c.span, ';')) {
    LieElement x;
    for (const auto& q : split(row, ',')) x.push_back(parse_rational(q));
    if (x.size() != g->dim())
      throw Error(ErrorCode::Usage, "--span rows need " + std::to_string(g->dim()) + " coordinates, got " + std::to_string(x.size()));
    vs.push_back(std::move(x));
  }
  return SubalgebraSpec(std::move(g), std::move(vs), "span");
}

std::string sub_label(const Common& c) { return c.span.empty() ? c.subalgebra : "span(" + c.span + ")"; }

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

void emit(std::ostream& out, const Common& c, const json& j, const std::string& table) {
  if (c.format == "json") out << j.dump(2) << "\n";
  else out << table;
}

// -- verbs ------------------------------------------------------------------------

int cmd_spherical(const Common& c, std::ostream& out) {
  auto g = LieAlgebra::make(c.group);
  const SubalgebraSpec h = subalgebra_of(c, g);
  const auto v = is_spherical_pair(h, c.trials, c.seed);
  json j = {{"verb", "spherical"}, {"group", c.group}, {"subalgebra", sub_label(c)}, {"seed", c.seed}, {"trials", c.trials},
            {"status", to_string(v.status)}, {"summary", v.summary()}, {"dim_g", v.dim_g}, {"dim_b", v.dim_b}, {"dim_h", v.dim_h},
            {"dimension_obstruction", v.dimension_obstruction}, {"sampling_based", v.sampling_based}};
  std::ostringstream t;
  t << v.summary() << "\n";
  t << "  group " << c.group << ", subalgebra " << sub_label(c) << " (dim " << v.dim_h << "), seed " << c.seed << "\n";
  if (v.certificate) {
    json params = json::array();
    t << "  witness g =";
    for (const auto& [root, q] : v.certificate->parameters) {
      params.push_back({{"root_index", root}, {"basis", g->basis_name(g->e(root))}, {"t", to_string(q)}});
      t << " exp(" << to_string(q) << " " << g->basis_name(g->e(root)) << ")";
    }
    t << "\n  re-verified rank " << certificate_rank(h, *v.certificate) << " of " << v.dim_g << "\n";
    j["certificate"] = {{"trial", v.certificate->trial}, {"rank", v.certificate->rank}, {"parameters", params},
                        {"reverified_rank", certificate_rank(h, *v.certificate)}};
  }
  emit(out, c, j, t.str());
  return 0;
}

int cmd_fibration(const Common& c, std::ostream& out) {
  auto g = LieAlgebra::make(c.group);
  const SubalgebraSpec h = subalgebra_of(c, g);
  const auto f = classify_torus_fibration(h);
  json j = {{"verb", "fibration"}, {"group", c.group}, {"subalgebra", sub_label(c)}, {"seed", c.seed},
            {"status", f.decisive ? to_string(f.status) : "not_decisive"}, {"decisive", f.decisive}, {"diagnostic", f.diagnostic}};
  std::ostringstream t;
  t << (f.decisive ? to_string(f.status) : "not_decisive") << " (" << f.diagnostic << ")\n";
  t << "  group " << c.group << ", subalgebra " << sub_label(c) << ", seed " << c.seed << "\n";
  int code = 0;
  if (f.decisive) {
    const auto x = spherical_iff_fibration_crosscheck(h, c.trials, c.seed);
    j["fiber_dim"] = f.fiber_dim;
    j["parabolic_dim"] = f.parabolic->dim();
    j["spherical"] = x.spherical.summary();
    j["agree"] = x.agree;
    t << "  parabolic normalizer of dim " << f.parabolic->dim() << ", fiber dim " << f.fiber_dim << "\n";
    t << "  sphericality: " << x.spherical.summary() << " -> " << (x.agree ? "consistent" : "DISAGREES") << "\n";
    if (!x.agree) code = 1;
  }
  emit(out, c, j, t.str());
  return code;
}

int cmd_mf(const Common& c, std::ostream& out) {
  auto g = LieAlgebra::make(c.group);
  const RootSystem& rs = g->roots();
  MFVerdict v;
  std::string what;
  if (!c.module.empty()) {
    const GModule m = parse_gmodule(rs, c.module);
    v = is_mf_coordinate_ring(rs, m, c.degree);
    what = "C[V], V = " + m.format(rs);
  } else {
    v = homog_coordinate_mf_crosscheck(subalgebra_of(c, g), c.degree);
    what = "C[G/H], H = " + sub_label(c);
  }
  json j = {{"verb", "mf"}, {"group", c.group}, {"ring", what}, {"degree_bound", c.degree}, {"seed", c.seed},
            {"multiplicity_free", v.multiplicity_free}, {"summary", describe(rs, v)}};
  if (v.witness) j["witness"] = {{"degree", v.witness->degree}, {"label", rs.format_weight(v.witness->label)}, {"multiplicity", v.witness->multiplicity}};
  std::ostringstream t;
  t << describe(rs, v) << "\n  " << what << ", group " << c.group << ", seed " << c.seed << "\n";
  for (std::size_t d = 0; d < v.table.size(); ++d) {
    if (v.table[d].empty()) continue;
    t << "  degree " << d << ":";
    json row = json::object();
    for (const auto& [w, m] : v.table[d]) {
      t << " " << (m > 1 ? std::to_string(m) + "*" : "") << "V(" << rs.format_weight(w) << ")";
      row[rs.format_weight(w)] = m;
    }
    t << "\n";
    j["table"][std::to_string(d)] = row;
  }
  emit(out, c, j, t.str());
  return 0;
}

int cmd_involution(const Common& c, std::size_t samples, std::size_t functions, double tol, bool flip, std::ostream& out) {
  auto g = LieAlgebra::make(c.group);
  const SubalgebraSpec h = subalgebra_of(c, g);
  const std::string mod = c.module.empty() ? "trivial" : c.module;
  const BundleCertificate cert = assemble_bundle_involution(h, parse_hmodule(h, mod));
  AntilinearMap nu = cert.nu;
  if (flip) nu.matrix = GaussRational(-1) * nu.matrix;
  const auto family = phi_family(cert, functions);
  const auto pts = random_model_points(*g, cert.module.dim, samples, c.seed);
  const OrbitReport r = orbit_preservation_check(family, nu, pts);
  const bool ok = cert.passed() && verify_bundle_certificate(cert) && family.size() >= functions && r.max_relative_residual <= tol;

  json nu_json = json::array();
  for (std::size_t i = 0; i < nu.matrix.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < nu.matrix.cols(); ++k) row.push_back({to_string(nu.matrix(i, k).re), to_string(nu.matrix(i, k).im)});
    nu_json.push_back(row);
  }
  json j = {{"verb", "involution"}, {"group", c.group}, {"subalgebra", sub_label(c)}, {"module", mod}, {"seed", c.seed},
            {"sigma_involutive", cert.sigma_involutive}, {"sigma_is_tau_theta", cert.sigma_is_tau_theta},
            {"tau_theta_commute", cert.tau_theta_commute}, {"nu_equivariant", cert.nu_equivariant},
            {"nu_involutive", cert.nu_involutive}, {"realified_dim", cert.realified_dim}, {"nu", nu_json},
            {"sign_flipped", flip}, {"samples", r.samples}, {"functions", r.functions}, {"max_residual", r.max_residual},
            {"max_relative_residual", r.max_relative_residual}, {"tolerance", tol}, {"verdict", ok ? "pass" : "fail"}};
  std::ostringstream t;
  t << (ok ? "pass" : "fail") << " (orbit residual " << fmt(r.max_relative_residual) << " over " << r.samples << " samples, "
    << r.functions << " functions, tolerance " << fmt(tol) << ")\n";
  t << "  group " << c.group << ", subalgebra " << sub_label(c) << ", V = " << mod << ", seed " << c.seed << (flip ? ", nu sign-flipped" : "")
    << "\n";
  t << "  (i) sigma involutive: " << cert.sigma_involutive << "  (ii) sigma = tau theta: " << cert.sigma_is_tau_theta
    << ", commute: " << cert.tau_theta_commute << "  (iii) nu equivariant: " << cert.nu_equivariant
    << ", nu^2 = id: " << cert.nu_involutive << "\n";
  t << "  realified intertwiner space dimension " << cert.realified_dim << "\n";
  emit(out, c, j, t.str());
  return ok ? 0 : 1;
}

C2Poly parse_poly(const std::string& text) {
  // terms like 2*x^3*y, -x, y^2, 0.5
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorCode::Parse, "empty polynomial");
  struct Term {
    double c;
    int a, b;
  };
  std::vector<Term> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    double sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    Term t{sign, 0, 0};
    bool any = false;
    while (i < s.size() && s[i] != '+' && s[i] != '-') {
      if (s[i] == '*') {
        ++i;
        continue;
      }
      if (s[i] == 'x' || s[i] == 'y') {
        const char var = s[i++];
        int e = 1;
        if (i < s.size() && s[i] == '^') {
          std::size_t used = 0;
          try {
            e = std::stoi(s.substr(i + 1), &used);
          } catch (const std::exception&) {
            throw Error(ErrorCode::Parse, "bad exponent in '" + text + "'");
          }
          if (e < 0) throw Error(ErrorCode::Parse, "negative exponent in '" + text + "'");
          i += 1 + used;
        }
        (var == 'x' ? t.a : t.b) += e;
      } else {
        std::size_t used = 0;
        try {
          t.c *= std::stod(s.substr(i), &used);
        } catch (const std::exception&) {
          throw Error(ErrorCode::Parse, "cannot read '" + s.substr(i) + "' in polynomial '" + text + "'");
        }
        i += used;
      }
      any = true;
    }
    if (!any) throw Error(ErrorCode::Parse, "empty term in '" + text + "'");
    terms.push_back(t);
  }
  int degree = 0;
  for (const auto& t : terms) degree = std::max(degree, t.a + t.b);
  C2Poly f = C2Poly::zero(degree);
  for (const auto& t : terms) f.coeffs(static_cast<Eigen::Index>(C2Poly::index(t.a, t.b))) += t.c;
  return f;
}

int cmd_isotypic(const Common& c, const std::string& poly, std::size_t torus, int window, std::size_t terms, int projectors,
                 int band, double tol, std::ostream& out) {
  json j = {{"verb", "isotypic"}, {"seed", c.seed}, {"tolerance", tol}};
  std::ostringstream t;
  bool ok = true;
  if (projectors >= 0) {
    const auto q = QuadratureScheme::su2(band >= 0 ? band : 2 * projectors);
    const auto r = verify_projector_algebra(q, projectors, 8, c.seed);
    ok = r.max_residual() <= tol;
    j["projectors"] = {{"degree", projectors},           {"band", q.band},
                       {"nodes", q.nodes.size()},        {"idempotence", r.idempotence},
                       {"orthogonality", r.orthogonality}, {"commutation", r.commutation},
                       {"self_adjointness", r.self_adjointness}, {"completeness", r.completeness}};
    t << (ok ? "pass" : "fail") << " (SU(2) projector algebra up to degree " << projectors << ", max residual " << fmt(r.max_residual())
      << ")\n  idempotence " << fmt(r.idempotence) << ", orthogonality " << fmt(r.orthogonality) << ", commutation "
      << fmt(r.commutation) << ", self-adjointness " << fmt(r.self_adjointness) << ", completeness " << fmt(r.completeness)
      << "\n  " << q.nodes.size() << " quadrature nodes, band " << q.band << ", seed " << c.seed << "\n";
  } else if (torus > 0) {
    const LaurentPoly f = random_laurent(torus, window, terms, c.seed);
    const auto comps = torus_components(f);
    LaurentPoly sum;
    sum.vars = torus;
    sum.window = window;
    for (const auto& [d, p] : comps)
      for (const auto& [k, v] : p.terms) sum.terms[k] += v;
    const double res = laurent_distance(sum, f);
    ok = res <= tol;
    j["torus"] = {{"vars", torus}, {"window", window}, {"terms", f.terms.size()}, {"components", comps.size()}, {"residual", res}};
    t << (ok ? "pass" : "fail") << " (U(1)^" << torus << " round trip, " << comps.size() << " components, residual " << fmt(res)
      << ")\n  random Laurent polynomial with " << f.terms.size() << " terms in window " << window << ", seed " << c.seed << "\n";
  } else {
    if (poly.empty()) throw Error(ErrorCode::Usage, "isotypic needs --poly, --torus or --projectors");
    const C2Poly f = parse_poly(poly);
    const auto q = QuadratureScheme::su2(band >= 0 ? band : 2 * f.degree);
    const auto r = finite_series_check(f, q, tol);
    ok = r.residual <= tol && r.support_within_degree;
    json support = json::array();
    std::string sup;
    for (const auto& [d, p] : r.components) {
      support.push_back(d);
      sup += (sup.empty() ? "" : ", ") + std::to_string(d);
    }
    j["su2"] = {{"poly", poly},         {"degree", f.degree},  {"band", q.band}, {"support", support},
                {"residual", r.residual}, {"max_delta_checked", r.max_delta_checked}, {"support_within_degree", r.support_within_degree}};
    t << (ok ? "pass" : "fail") << " (support {" << sup << "}, reconstruction residual " << fmt(r.residual) << ")\n  f = " << poly
      << ", labels 0.." << r.max_delta_checked << " examined, band " << q.band << "\n";
  }
  j["verdict"] = ok ? "pass" : "fail";
  emit(out, c, j, t.str());
  return ok ? 0 : 1;
}

int cmd_catalog(const Common& c, const std::string& action, bool all, const std::string& checks, const std::string& ids,
                const std::string& path_opt, std::ostream& out) {
  std::string path = path_opt;
  if (path.empty()) {
    const char* env = std::getenv(kCatalogEnv);
    path = env && *env ? env : default_catalog_path();
  }
  auto entries = load_catalog(path);
  if (!ids.empty()) {
    const auto want = split(ids, ',');
    for (const auto& w : want)
      if (std::none_of(entries.begin(), entries.end(), [&](const auto& e) { return e.id == w; }))
        throw Error(ErrorCode::Usage, "no catalog entry '" + w + "'");
    std::erase_if(entries, [&](const auto& e) { return std::find(want.begin(), want.end(), e.id) == want.end(); });
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  if (action == "list" || action == "validate") {
    json j = {{"verb", "catalog"}, {"action", action}, {"path", path}, {"entries", json::array()}};
    std::ostringstream t;
    t << entries.size() << " entries in " << path << "\n";
    for (const auto& e : entries) {
      std::string exp;
      for (const auto& [k, x] : e.expected) exp += (exp.empty() ? "" : ", ") + k + "=" + x.verdict;
      t << "  " << std::left << std::setw(20) << e.id << " " << std::setw(7) << e.group << " "
        << (e.subalgebra.span.empty() ? e.subalgebra.name : e.subalgebra.name + " (span)") << (e.module ? ", V = " + *e.module : "")
        << (action == "list" ? "  [" + exp + "]" : "") << "\n";
      j["entries"].push_back(e.id);
    }
    emit(out, c, j, t.str());
    return 0;
  }
  if (action != "run") throw Error(ErrorCode::Usage, "catalog action must be run, list or validate");
  std::vector<std::string> chosen;
  if (!checks.empty()) chosen = split(checks, ',');
  else if (all) chosen = catalog_checks();
  else throw Error(ErrorCode::Usage, "catalog run needs --all or --checks");

  RunOptions opt;
  opt.trials = c.trials;
  opt.seed = c.seed;
  opt.mf_degree = c.degree;
  const CatalogRun run = run_catalog(entries, chosen, opt);
  json rows = json::array();
  std::ostringstream t;
  t << std::left << std::setw(20) << "entry" << std::setw(14) << "check" << std::setw(24) << "computed" << std::setw(24) << "expected"
    << "agree\n";
  for (const auto& r : run.rows) {
    rows.push_back({{"entry", r.entry}, {"check", r.check}, {"computed", r.computed}, {"expected", r.expected}, {"agree", r.agree},
                    {"skipped", r.skipped}, {"detail", r.detail}});
    t << std::setw(20) << r.entry << std::setw(14) << r.check << std::setw(24) << r.computed << std::setw(24)
      << (r.expected.empty() ? "-" : r.expected) << (r.skipped ? "skipped" : r.expected.empty() ? "-" : r.agree ? "yes" : "NO") << "\n";
  }
  t << "summary: " << run.agreements << " agreements, " << run.disagreements << " disagreements, " << run.skipped << " skipped, "
    << run.unchecked << " without expectation (seed " << c.seed << ", trials " << c.trials << ", degree " << c.degree << ")\n";
  json j = {{"verb", "catalog"}, {"action", "run"}, {"path", path}, {"seed", c.seed}, {"trials", c.trials}, {"degree", c.degree},
            {"checks", chosen}, {"rows", rows},
            {"summary", {{"agreements", run.agreements}, {"disagreements", run.disagreements}, {"skipped", run.skipped}, {"unchecked", run.unchecked}}}};
  emit(out, c, j, t.str());
  return run.ok() ? 0 : 1;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage:
    case ErrorCode::Parse:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::UnsupportedType: return 2;
    default: return 1;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sphtool: sphericality, multiplicity-free coordinate rings, bundle involutions and isotypic projectors"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub, bool needs_group) {
    auto* g = sub->add_option("--group", c.group, "group type, e.g. A2, A1xA1, A1+T1");
    if (needs_group) g->required();
    sub->add_option("--seed", c.seed, "random seed (echoed in all output)")->capture_default_str();
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  };
  auto add_sub = [&](CLI::App* sub) {
    sub->add_option("--subalgebra", c.subalgebra, "symbolic subalgebra: full, zero, cartan, borel, nilradical, diagonal, principal")
        ->capture_default_str();
    sub->add_option("--span", c.span, "explicit spanning set, rows ';'-separated, Chevalley coordinates ','-separated");
  };

  auto* sph = app.add_subcommand("spherical", "open-orbit test for (g, h) with an exact rational witness");
  add_common(sph, true);
  add_sub(sph);
  sph->add_option("--trials", c.trials, "random trials")->capture_default_str();

  auto* fib = app.add_subcommand("fibration", "flag manifold / torus bundle classification through the normalizer");
  add_common(fib, true);
  add_sub(fib);
  fib->add_option("--trials", c.trials, "random trials for the sphericality side")->capture_default_str();

  auto* mf = app.add_subcommand("mf", "multiplicity-freeness of C[V] (with --module) or C[G/H] (otherwise), truncated");
  add_common(mf, true);
  add_sub(mf);
  mf->add_option("--module", c.module, "G-module, e.g. defining+defining, (1,0), adjoint");
  mf->add_option("--degree", c.degree, "degree bound")->capture_default_str()->check(CLI::Range(1, 64));

  std::size_t samples = 20, functions = 5;
  double tol = 1e-8;
  bool flip = false;
  auto* inv = app.add_subcommand("involution", "bundle involution certificate and orbit check");
  add_common(inv, true);
  add_sub(inv);
  inv->add_option("--module", c.module, "H-module: trivial, char(2), char(1,0|3), or a G-module restricted to H");
  inv->add_option("--samples", samples, "model points")->capture_default_str();
  inv->add_option("--functions", functions, "invariant functions Phi")->capture_default_str();
  inv->add_option("--tol", tol, "orbit residual tolerance")->capture_default_str();
  inv->add_flag("--flip-sign", flip, "negative control: use -nu");

  std::string poly;
  std::size_t torus = 0, terms = 50;
  int window = 4, projectors = -1, band = -1;
  double iso_tol = 1e-8;
  auto* iso = app.add_subcommand("isotypic", "isotypic projectors for SU(2) on C^2 polynomials or U(1)^n on Laurent polynomials");
  add_common(iso, false);
  iso->add_option("--poly", poly, "polynomial in x, y, e.g. 'x^3 + y'");
  iso->add_option("--torus", torus, "number of torus variables (random Laurent polynomial)");
  iso->add_option("--window", window, "exponent window for --torus")->capture_default_str();
  iso->add_option("--terms", terms, "terms of the random Laurent polynomial")->capture_default_str();
  iso->add_option("--projectors", projectors, "verify the projector algebra up to this degree");
  iso->add_option("--band", band, "quadrature band limit (default twice the degree)");
  iso->add_option("--tol", iso_tol, "tolerance")->capture_default_str();

  std::string action, checks, ids, path;
  bool all = false;
  auto* cat = app.add_subcommand("catalog", "run, list or validate the catalog of test pairs");
  add_common(cat, false);
  cat->add_option("action", action, "run | list | validate")->required()->check(CLI::IsMember({"run", "list", "validate"}));
  cat->add_flag("--all", all, "all checks");
  cat->add_option("--checks", checks, "comma-separated subset of spherical,mf_truncated,fibration,adapted,involution");
  cat->add_option("--ids", ids, "comma-separated entry ids");
  cat->add_option("--path", path, std::string("catalog file (default: $") + kCatalogEnv + " or the shipped catalog)");
  cat->add_option("--trials", c.trials, "random trials")->capture_default_str();
  cat->add_option("--degree", c.degree, "degree bound for mf_truncated")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error [" << error_code_name(ErrorCode::Usage) << "]: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands())
      if (sub->parsed()) {
        err << sub->help();
        return 2;
      }
    err << app.help();
    return 2;
  }

  try {
    if (sph->parsed()) return cmd_spherical(c, out);
    if (fib->parsed()) return cmd_fibration(c, out);
    if (mf->parsed()) return cmd_mf(c, out);
    if (inv->parsed()) return cmd_involution(c, samples, functions, tol, flip, out);
    if (iso->parsed()) return cmd_isotypic(c, poly, torus, window, terms, projectors, band, iso_tol, out);
    if (cat->parsed()) return cmd_catalog(c, action, all, checks, ids, path, out);
  } catch (const Error& e) {
    err << "error [" << e.code_name() << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error [" << error_code_name(ErrorCode::Internal) << "]: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace sph
