#include "sph/rootsys.hpp"

#include "sph/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace sph {

namespace {

bool root_order_less(const IVector& a, const IVector& b) {
  long ha = 0, hb = 0;
  for (long c : a) ha += c;
  for (long c : b) hb += c;
  if (ha != hb) return ha < hb;
  // Lexicographically larger first, so alpha_1 = (1,0,..) precedes alpha_2.
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int parse_positive_int(std::string_view digits, std::string_view context) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(ErrorCode::UnsupportedType, "malformed Cartan type '" + std::string(context) + "'");
  return std::stoi(std::string(digits));
}

}  // namespace

CartanType CartanType::parse(std::string_view text) {
  CartanType type;
  const std::string full = trim(text);
  if (full.empty()) throw Error(ErrorCode::UnsupportedType, "empty Cartan type");
  std::string_view rest = full;
  std::string semisimple;
  if (auto plus = rest.find('+'); plus != std::string_view::npos) {
    semisimple = trim(rest.substr(0, plus));
    std::string torus = trim(rest.substr(plus + 1));
    if (torus.size() < 2 || (torus[0] != 'T' && torus[0] != 't'))
      throw Error(ErrorCode::UnsupportedType, "malformed torus part in '" + full + "'");
    type.torus_rank = parse_positive_int(std::string_view(torus).substr(1), full);
  } else if (full[0] == 'T' || full[0] == 't') {
    type.torus_rank = parse_positive_int(std::string_view(full).substr(1), full);
  } else {
    semisimple = full;
  }

  std::size_t pos = 0;
  while (pos < semisimple.size()) {
    std::size_t next = semisimple.find_first_of("xX*", pos);
    std::string part = trim(std::string_view(semisimple).substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (part.size() < 2) throw Error(ErrorCode::UnsupportedType, "malformed Cartan type '" + full + "'");
    SimpleFactor f{static_cast<char>(std::toupper(static_cast<unsigned char>(part[0]))), parse_positive_int(std::string_view(part).substr(1), full)};
    const bool ok = (f.letter == 'A' && f.rank >= 1 && f.rank <= 3) ||
                    (f.letter == 'B' && f.rank >= 2 && f.rank <= 3) ||
                    (f.letter == 'C' && f.rank == 3) || (f.letter == 'G' && f.rank == 2);
    if (!ok) throw Error(ErrorCode::UnsupportedType, "unsupported simple factor '" + part + "' (supported: A1-A3, B2, B3, C3, G2)");
    type.factors.push_back(f);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  int total = type.torus_rank;
  for (const auto& f : type.factors) total += f.rank;
  int ss = total - type.torus_rank;
  if (ss > 3) throw Error(ErrorCode::UnsupportedType, "semisimple rank " + std::to_string(ss) + " exceeds 3 in '" + full + "'");
  if (type.torus_rank > 3) throw Error(ErrorCode::UnsupportedType, "torus rank exceeds 3 in '" + full + "'");
  if (total == 0) throw Error(ErrorCode::UnsupportedType, "empty Cartan type '" + full + "'");
  return type;
}

std::string CartanType::label() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "x";
    out += factors[i].label();
  }
  if (torus_rank > 0) {
    if (!out.empty()) out += "+";
    out += "T" + std::to_string(torus_rank);
  }
  return out;
}

std::vector<std::vector<int>> simple_cartan_matrix(const SimpleFactor& factor) {
  const int n = factor.rank;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    a[i][i] = 2;
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
  }
  switch (factor.letter) {
    case 'A': break;
    case 'B': a[n - 1][n - 2] = -2; break;  // <alpha_n^vee, alpha_{n-1}> with alpha_n short
    case 'C': a[n - 2][n - 1] = -2; break;  // <alpha_{n-1}^vee, alpha_n> with alpha_n long
    case 'G':
      a[0][1] = -3;
      a[1][0] = -1;
      break;
    default: throw Error(ErrorCode::UnsupportedType, "unknown type letter");
  }
  return a;
}

RootSystem RootSystem::build(const CartanType& type) {
  RootSystem rs;
  rs.type_ = type;
  std::size_t r = 0;
  for (const auto& f : type.factors) {
    rs.factor_offset_.push_back(r);
    r += static_cast<std::size_t>(f.rank);
  }
  rs.cartan_.assign(r, std::vector<int>(r, 0));
  rs.simple_length2_.assign(r, 0);
  for (std::size_t fi = 0; fi < type.factors.size(); ++fi) {
    const auto block = simple_cartan_matrix(type.factors[fi]);
    const std::size_t off = rs.factor_offset_[fi];
    for (std::size_t i = 0; i < block.size(); ++i) {
      rs.factor_of_simple_.push_back(fi);
      for (std::size_t j = 0; j < block.size(); ++j) rs.cartan_[off + i][off + j] = block[i][j];
    }
    // Symmetrise: a_ij |alpha_i|^2 = a_ji |alpha_j|^2 along the (path) Dynkin diagram.
    std::vector<Rational> len(block.size());
    len[0] = 1;
    for (std::size_t i = 1; i < block.size(); ++i) len[i] = len[i - 1] * Rational(block[i - 1][i]) / Rational(block[i][i - 1]);
    Rational shortest = *std::min_element(len.begin(), len.end());
    for (std::size_t i = 0; i < block.size(); ++i) rs.simple_length2_[off + i] = 2 * len[i] / shortest;
  }

  // Positive roots via alpha-strings.
  std::set<IVector> seen;
  std::vector<IVector> frontier;
  for (std::size_t i = 0; i < r; ++i) {
    IVector e(r, 0);
    e[i] = 1;
    seen.insert(e);
    frontier.push_back(e);
  }
  std::vector<IVector> all = frontier;
  while (!frontier.empty()) {
    std::vector<IVector> next;
    for (const auto& beta : frontier) {
      for (std::size_t i = 0; i < r; ++i) {
        IVector probe = beta;
        long p = 0;
        while (true) {
          probe[i] -= 1;
          if (!seen.count(probe)) break;
          ++p;
        }
        long pair = 0;  // <beta, alpha_i^vee>
        for (std::size_t j = 0; j < r; ++j) pair += rs.cartan_[i][j] * beta[j];
        const long q = p - pair;
        if (q > 0) {
          IVector up = beta;
          up[i] += 1;
          if (seen.insert(up).second) {
            next.push_back(up);
            all.push_back(up);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(), root_order_less);
  rs.positive_ = all;
  for (std::size_t i = 0; i < r; ++i) {
    IVector e(r, 0);
    e[i] = 1;
    rs.simple_index_.push_back(*rs.root_index(e));
  }

  // Symmetric form on roots S = D A with D = diag(|alpha_i|^2 / 2).
  QMatrix s(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) s(i, j) = rs.simple_length2_[i] * rs.cartan_[i][j] / 2;
  for (const auto& beta : rs.positive_) {
    Rational l2 = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) l2 += beta[i] * beta[j] * s(i, j);
    rs.length2_.push_back(l2);
    IVector co(r, 0);
    for (std::size_t j = 0; j < r; ++j) {
      Rational c = beta[j] * rs.simple_length2_[j] / l2;
      if (c.get_den() != 1) throw Error(ErrorCode::Internal, "non-integral coroot coefficient");
      co[j] = c.get_num().get_si();
    }
    rs.coroot_.push_back(co);
  }

  QMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a(i, j) = rs.cartan_[i][j];
  if (r > 0) {
    const auto ainv = inverse(a);
    if (!ainv) throw Error(ErrorCode::Internal, "singular Cartan matrix");
    for (std::size_t i = 0; i < r; ++i) rs.fundamental_.push_back(ainv->column(i));
    rs.weight_form_ = ainv->transpose() * s * *ainv;
    rs.rho_vee_height_.assign(r, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) rs.rho_vee_height_[j] += (*ainv)(i, j);
  }
  return rs;
}

std::optional<std::size_t> RootSystem::root_index(const IVector& root) const {
  auto it = std::lower_bound(positive_.begin(), positive_.end(), root, root_order_less);
  if (it != positive_.end() && *it == root) return static_cast<std::size_t>(it - positive_.begin());
  return std::nullopt;
}

long RootSystem::height(std::size_t root) const {
  long h = 0;
  for (long c : positive_[root]) h += c;
  return h;
}

long RootSystem::pairing(const Weight& lambda, std::size_t root) const {
  long s = 0;
  for (std::size_t j = 0; j < rank(); ++j) s += coroot_[root][j] * lambda.coords[j];
  return s;
}

IVector RootSystem::root_to_weight(const IVector& root) const {
  IVector w(rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) w[i] += cartan_[i][j] * root[j];
  return w;
}

Rational RootSystem::inner(const Weight& a, const Weight& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (a.coords[i] != 0 && b.coords[j] != 0) s += a.coords[i] * b.coords[j] * weight_form_(i, j);
  return s;
}

Rational RootSystem::weight_height(const Weight& lambda) const {
  Rational h = 0;
  for (std::size_t j = 0; j < rank(); ++j) h += rho_vee_height_[j] * lambda.coords[j];
  return h;
}

bool RootSystem::is_dominant(const Weight& lambda) const {
  if (lambda.coords.size() != weight_length()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (lambda.coords[i] < 0) return false;
  return true;
}

Weight RootSystem::rho() const {
  Weight w = zero_weight();
  for (std::size_t i = 0; i < rank(); ++i) w.coords[i] = 1;
  return w;
}

Weight RootSystem::fundamental(std::size_t i) const {
  Weight w = zero_weight();
  w.coords[i] = 1;
  return w;
}

Weight RootSystem::reflect(const Weight& lambda, std::size_t i) const {
  // s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i; alpha_i has weight
  // coordinates (a_ji)_j.
  Weight out = lambda;
  const long m = lambda.coords[i];
  for (std::size_t j = 0; j < rank(); ++j) out.coords[j] -= m * cartan_[j][i];
  return out;
}

IVector RootSystem::reflect_root(const IVector& root, std::size_t i) const {
  long pair = 0;
  for (std::size_t j = 0; j < rank(); ++j) pair += cartan_[i][j] * root[j];
  IVector out = root;
  out[i] -= pair;
  return out;
}

Weight RootSystem::apply_word(const std::vector<std::size_t>& word, const Weight& lambda) const {
  Weight w = lambda;
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = reflect(w, *it);
  return w;
}

IVector RootSystem::apply_word_to_root(const std::vector<std::size_t>& word, const IVector& root) const {
  IVector v = root;
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect_root(v, *it);
  return v;
}

std::vector<std::vector<std::size_t>> RootSystem::weyl_group() const {
  // rho has trivial stabiliser, so elements correspond to images of rho.
  std::vector<std::vector<std::size_t>> words{{}};
  std::set<IVector> seen{rho().coords};
  std::size_t level_begin = 0;
  while (level_begin < words.size()) {
    const std::size_t level_end = words.size();
    for (std::size_t k = level_begin; k < level_end; ++k) {
      for (std::size_t i = 0; i < rank(); ++i) {
        auto w = words[k];
        w.push_back(i);
        if (seen.insert(apply_word(w, rho()).coords).second) words.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return words;
}

std::size_t RootSystem::weyl_order() const { return weyl_group().size(); }

std::string RootSystem::format_weight(const Weight& lambda) const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < rank(); ++i) {
    const long c = lambda.coords[i];
    if (c == 0) continue;
    if (any && c > 0) os << "+";
    if (c == -1) os << "-";
    else if (c != 1) os << c;
    os << "ω";
    if (rank() > 1) os << (i + 1);
    any = true;
  }
  if (!any) os << "0";
  if (torus_rank() > 0) {
    os << "|t=(";
    for (std::size_t k = 0; k < torus_rank(); ++k) {
      if (k) os << ",";
      os << lambda.coords[rank() + k];
    }
    os << ")";
  }
  return os.str();
}

std::vector<std::size_t> longest_weyl_element(const RootSystem& rs) {
  if (rs.rank() == 0) throw Error(ErrorCode::DegenerateInput, "pure torus has no Weyl group");
  const Weight target = [&] {
    Weight w = rs.rho();
    for (std::size_t i = 0; i < rs.rank(); ++i) w.coords[i] = -1;
    return w;
  }();
  for (const auto& word : rs.weyl_group())
    if (rs.apply_word(word, rs.rho()) == target) return word;
  throw Error(ErrorCode::Internal, "longest element not found");
}

}  // namespace sph
