#include "sph/sympoly.hpp"

#include "sph/error.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace sph {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

long parse_long(const std::string& s, std::string_view context) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "expected an integer in '" + std::string(context) + "', got '" + s + "'");
  }
}

Weight parse_coordinates(const RootSystem& rs, const std::string& tok) {
  // "(a,b,...)" or "(a,b|c,...)"
  if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
    throw Error(ErrorCode::UnknownSymbol, "unknown module summand '" + tok + "'");
  std::string body = tok.substr(1, tok.size() - 2);
  std::string ss = body, tt;
  if (auto bar = body.find('|'); bar != std::string::npos) {
    ss = body.substr(0, bar);
    tt = body.substr(bar + 1);
  }
  auto split = [&](const std::string& s) {
    IVector v;
    if (trim(s).empty()) return v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) v.push_back(parse_long(trim(item), tok));
    return v;
  };
  IVector coords = split(ss);
  const IVector charges = split(tt);
  if (coords.size() == rs.weight_length() && charges.empty()) return Weight{coords};
  if (coords.size() != rs.rank() || charges.size() != rs.torus_rank())
    throw Error(ErrorCode::Parse, "summand '" + tok + "' needs " + std::to_string(rs.rank()) + " coordinates and " +
                                      std::to_string(rs.torus_rank()) + " torus charges");
  coords.insert(coords.end(), charges.begin(), charges.end());
  return Weight{coords};
}

Weight defining_label(const RootSystem& rs) {
  Weight w = rs.zero_weight();
  if (rs.rank() > 0) w.coords[0] = 1;
  for (std::size_t k = rs.rank(); k < w.coords.size(); ++k) w.coords[k] = 1;
  return w;
}

long label_degree(const RootSystem& rs, const Weight& w) {
  long d = 0;
  for (std::size_t i = 0; i < w.coords.size(); ++i) d += i < rs.rank() ? w.coords[i] : std::labs(w.coords[i]);
  return d;
}

}  // namespace

std::size_t GModule::dim(const RootSystem& rs) const {
  std::size_t d = 0;
  for (const auto& [w, m] : summands) d += static_cast<std::size_t>(m) * weyl_dim(rs, w);
  return d;
}

CharacterTable GModule::character(const RootSystem& rs) const {
  CharacterTable c;
  for (const auto& [w, m] : summands) c = character_sum(c, freudenthal_multiplicities(rs, w), m);
  return c;
}

GModule GModule::dual(const RootSystem& rs) const {
  GModule out;
  for (const auto& [w, m] : summands) out.summands.emplace_back(dual_label(rs, w), m);
  return out;
}

std::string GModule::format(const RootSystem& rs) const {
  std::string s;
  for (const auto& [w, m] : summands) {
    if (!s.empty()) s += " + ";
    if (m != 1) s += std::to_string(m) + "*";
    s += "V(" + rs.format_weight(w) + ")";
  }
  return s.empty() ? "0" : s;
}

GModule parse_gmodule(const RootSystem& rs, std::string_view text) {
  GModule out;
  std::string all(text);
  std::size_t start = 0;
  int depth = 0;
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i <= all.size(); ++i) {
    if (i < all.size() && all[i] == '(') ++depth;
    if (i < all.size() && all[i] == ')') --depth;
    if (i == all.size() || (all[i] == '+' && depth == 0)) {
      tokens.push_back(trim(std::string_view(all).substr(start, i - start)));
      start = i + 1;
    }
  }
  for (auto tok : tokens) {
    if (tok.empty()) throw Error(ErrorCode::Parse, "empty summand in module '" + all + "'");
    long mult = 1;
    if (auto star = tok.find('*'); star != std::string::npos) {
      mult = parse_long(trim(tok.substr(0, star)), all);
      tok = trim(tok.substr(star + 1));
      if (mult < 1) throw Error(ErrorCode::Parse, "summand multiplicity must be positive in '" + all + "'");
    }
    std::vector<Weight> labels;
    if (tok == "trivial") labels.push_back(rs.zero_weight());
    else if (tok == "defining") labels.push_back(defining_label(rs));
    else if (tok == "dual") labels.push_back(dual_label(rs, defining_label(rs)));
    else if (tok == "adjoint") {
      for (std::size_t f = 0; f < rs.type().factors.size(); ++f) {
        const RootSystem local = RootSystem::build(CartanType{{rs.type().factors[f]}, 0});
        const IVector theta = local.root_to_weight(local.positive_roots().back());
        Weight w = rs.zero_weight();
        for (std::size_t j = 0; j < theta.size(); ++j) w.coords[rs.factor_offset(f) + j] = theta[j];
        labels.push_back(w);
      }
      for (std::size_t k = 0; k < rs.torus_rank(); ++k) labels.push_back(rs.zero_weight());
    } else labels.push_back(parse_coordinates(rs, tok));
    for (const auto& w : labels) {
      if (!rs.is_dominant(w)) throw Error(ErrorCode::NotDominant, "summand " + rs.format_weight(w) + " is not dominant");
      auto it = std::find_if(out.summands.begin(), out.summands.end(), [&](const auto& s) { return s.first == w; });
      if (it == out.summands.end()) out.summands.emplace_back(w, mult);
      else it->second += mult;
    }
  }
  return out;
}

std::vector<CharacterTable> sym_power_characters(const RootSystem& rs, const GModule& v, std::size_t max_degree) {
  const CharacterTable chi = v.character(rs);
  std::vector<CharacterTable> adams_powers(max_degree + 1);
  for (std::size_t k = 1; k <= max_degree; ++k) adams_powers[k] = adams(chi, static_cast<long>(k));
  std::vector<CharacterTable> h(max_degree + 1);
  h[0][rs.zero_weight()] = 1;
  for (std::size_t d = 1; d <= max_degree; ++d) {
    CharacterTable acc;
    for (std::size_t k = 1; k <= d; ++k) acc = character_sum(acc, character_product(adams_powers[k], h[d - k]));
    for (auto& [w, m] : acc) {
      if (m % static_cast<long>(d) != 0) throw Error(ErrorCode::Internal, "Newton recursion lost integrality");
      m /= static_cast<long>(d);
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    h[d] = std::move(acc);
  }
  return h;
}

Decomposition sym_power_decompose(const RootSystem& rs, const GModule& v, std::size_t degree) {
  return decompose_character(rs, sym_power_characters(rs, v, degree)[degree]);
}

std::string describe(const RootSystem& rs, const MFVerdict& v) {
  std::ostringstream os;
  if (v.multiplicity_free) os << "multiplicity free up to degree " << v.degree_bound;
  else
    os << "fails at degree " << v.witness->degree << ", label " << rs.format_weight(v.witness->label) << ", multiplicity "
       << v.witness->multiplicity;
  if (!v.skipped.empty()) os << " (" << v.skipped.size() << " labels above the dimension cap skipped)";
  return os.str();
}

MFVerdict is_mf_coordinate_ring(const RootSystem& rs, const GModule& v, std::size_t max_degree) {
  if (max_degree < 1) throw Error(ErrorCode::DegenerateInput, "degree bound must be at least 1");
  const auto chars = sym_power_characters(rs, v.dual(rs), max_degree);
  MFVerdict out;
  out.degree_bound = max_degree;
  out.table.resize(max_degree + 1);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t d = 0; d <= max_degree; ++d) out.table[d] = decompose_character(rs, chars[d]);

  for (std::size_t d = 0; d <= max_degree; ++d)
    for (const auto& [w, m] : out.table[d])
      if (m >= 2 && (!out.witness || m > out.witness->multiplicity)) out.witness = MFWitness{d, w, m, std::nullopt};
  if (!out.witness) {
    std::map<Weight, std::size_t> first_seen;
    for (std::size_t d = 0; d <= max_degree && !out.witness; ++d)
      for (const auto& [w, m] : out.table[d]) {
        auto [it, fresh] = first_seen.emplace(w, d);
        if (!fresh) {
          out.witness = MFWitness{d, w, 2, it->second};
          break;
        }
      }
  }
  out.multiplicity_free = !out.witness;
  return out;
}

std::size_t invariant_dimension(const IrrepModule& m, const SubalgebraSpec& h) {
  SparseSystem sys(m.dim);
  for (const auto& x : h.basis()) {
    const QMatrix r = m.rho(x);
    for (std::size_t i = 0; i < m.dim && sys.rank() < m.dim; ++i) {
      SparseSystem::Row row;
      for (std::size_t j = 0; j < m.dim; ++j)
        if (r(i, j) != 0) row.emplace(j, r(i, j));
      if (!row.empty()) sys.add_equation(std::move(row));
    }
  }
  return m.dim - sys.rank();
}

MFVerdict homog_coordinate_mf_crosscheck(const SubalgebraSpec& h, std::size_t max_degree,
                                         const std::optional<GModule>& ambient_module, std::size_t cap) {
  if (!h.is_reductive()) throw Error(ErrorCode::NonReductive, "subalgebra '" + h.name() + "' is not reductive");
  const LieAlgebra& g = h.ambient();
  const RootSystem& rs = g.roots();

  std::vector<std::pair<Weight, std::size_t>> labels;  // label, degree
  if (ambient_module) {
    const MFVerdict ring = is_mf_coordinate_ring(rs, *ambient_module, max_degree);
    std::set<Weight> seen;
    for (std::size_t d = 0; d <= max_degree; ++d)
      for (const auto& [w, m] : ring.table[d])
        if (seen.insert(w).second) labels.emplace_back(w, d);
  } else {
    const long bound = static_cast<long>(max_degree);
    IVector c(rs.weight_length(), 0);
    for (std::size_t k = rs.rank(); k < c.size(); ++k) c[k] = -bound;
    while (true) {
      const Weight w{c};
      const long d = label_degree(rs, w);
      if (d <= bound) labels.emplace_back(w, static_cast<std::size_t>(d));
      std::size_t i = 0;
      for (; i < c.size(); ++i) {
        const long lo = i < rs.rank() ? 0 : -bound;
        if (++c[i] <= bound) break;
        c[i] = lo;
      }
      if (i == c.size()) break;
    }
    std::stable_sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  }

  std::vector<long> mult(labels.size(), -1);
  std::vector<std::string> errors(labels.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const Weight& w = labels[k].first;
    if (cap != 0 && weyl_dim(rs, w) > cap) continue;
    try {
      const IrrepModule dual = build_module(g, dual_label(rs, w), cap);
      mult[k] = static_cast<long>(invariant_dimension(dual, h));
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error(ErrorCode::Internal, e);

  MFVerdict out;
  out.degree_bound = max_degree;
  out.table.resize(max_degree + 1);
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const auto& [w, d] = labels[k];
    if (mult[k] < 0) {
      out.skipped.push_back(w);
      continue;
    }
    if (mult[k] > 0) out.table[d][w] = mult[k];
    if (mult[k] >= 2 && (!out.witness || mult[k] > out.witness->multiplicity)) out.witness = MFWitness{d, w, mult[k], std::nullopt};
  }
  out.multiplicity_free = !out.witness;
  return out;
}

}  // namespace sph
