#include "sph/repthy.hpp"

#include "sph/error.hpp"
#include "sph/highest_weight.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace sph {

namespace {

void require_dominant(const RootSystem& rs, const Weight& lambda) {
  if (lambda.coords.size() != rs.weight_length())
    throw Error(ErrorCode::NotDominant, "weight has " + std::to_string(lambda.coords.size()) + " coordinates, expected " +
                                            std::to_string(rs.weight_length()));
  if (!rs.is_dominant(lambda)) throw Error(ErrorCode::NotDominant, "weight " + rs.format_weight(lambda) + " is not dominant");
}

// Dominant representative of the Weyl orbit (semisimple coordinates only).
Weight dominant_conjugate(const RootSystem& rs, Weight w) {
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t i = 0; i < rs.rank(); ++i)
      if (w.coords[i] < 0) {
        w = rs.reflect(w, i);
        moved = true;
      }
  }
  return w;
}

// lambda - mu as a combination of simple roots, if it is a nonnegative one.
bool below(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    Rational n = 0;
    for (std::size_t j = 0; j < rs.rank(); ++j) n += rs.fundamental_weights()[j][i] * (lambda.coords[j] - mu.coords[j]);
    if (n < 0 || n.get_den() != 1) return false;
  }
  return true;
}

}  // namespace

std::size_t weyl_dim(const RootSystem& rs, const Weight& lambda) {
  require_dominant(rs, lambda);
  Rational d = 1;
  const Weight rho = rs.rho();
  for (std::size_t b = 0; b < rs.num_positive_roots(); ++b)
    d *= Rational(rs.pairing(lambda, b) + rs.pairing(rho, b)) / rs.pairing(rho, b);
  if (d.get_den() != 1) throw Error(ErrorCode::Internal, "non-integral Weyl dimension");
  return d.get_num().get_ui();
}

CharacterTable freudenthal_multiplicities(const RootSystem& rs, const Weight& lambda) {
  require_dominant(rs, lambda);
  const std::size_t r = rs.rank();

  // Integer multiple of the invariant form on fundamental coordinates; the
  // recursion only uses ratios.
  const QMatrix& form = rs.weight_form();
  mpz_class den = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) den = lcm(den, form(i, j).get_den());
  std::vector<long> fi(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) fi[i * r + j] = Rational(form(i, j) * den).get_num().get_si();
  auto ip = [&](const IVector& a, const IVector& b) {
    long s = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) s += a[i] * fi[i * r + j] * b[j];
    return s;
  };

  std::vector<IVector> roots_w;
  for (const auto& beta : rs.positive_roots()) roots_w.push_back(rs.root_to_weight(beta));
  std::vector<IVector> simple_w;
  for (std::size_t i = 0; i < r; ++i) {
    IVector a(r);
    for (std::size_t j = 0; j < r; ++j) a[j] = rs.cartan_matrix()[j][i];
    simple_w.push_back(a);
  }

  const IVector top(lambda.coords.begin(), lambda.coords.begin() + static_cast<std::ptrdiff_t>(r));
  auto plus_rho = [&](IVector v) {
    for (auto& c : v) c += 1;
    return v;
  };
  const long top_norm = ip(plus_rho(top), plus_rho(top));

  std::map<IVector, long> mult;
  mult[top] = 1;
  std::vector<IVector> level{top};
  while (!level.empty()) {
    std::set<IVector> next;
    for (const auto& mu : level)
      for (std::size_t i = 0; i < r; ++i) {
        IVector nu = mu;
        for (std::size_t j = 0; j < r; ++j) nu[j] -= simple_w[i][j];
        if (mult.count(nu) || next.count(nu)) continue;
        Weight full{nu};
        full.coords.resize(rs.weight_length(), 0);
        if (below(rs, lambda, dominant_conjugate(rs, full))) next.insert(nu);
      }
    for (const auto& nu : next) {
      long sum = 0;
      for (const auto& a : roots_w) {
        IVector w = nu;
        for (long k = 1;; ++k) {
          for (std::size_t j = 0; j < r; ++j) w[j] += a[j];
          auto it = mult.find(w);
          if (it == mult.end()) break;
          sum += ip(w, a) * it->second;
        }
      }
      const long gap = top_norm - ip(plus_rho(nu), plus_rho(nu));
      if (gap <= 0 || (2 * sum) % gap != 0) throw Error(ErrorCode::Internal, "Freudenthal recursion lost integrality");
      mult[nu] = 2 * sum / gap;
    }
    level.assign(next.begin(), next.end());
  }

  CharacterTable out;
  for (const auto& [mu, m] : mult) {
    if (m == 0) continue;
    Weight w{mu};
    w.coords.insert(w.coords.end(), lambda.coords.begin() + static_cast<std::ptrdiff_t>(r), lambda.coords.end());
    out[w] = m;
  }
  return out;
}

QMatrix IrrepModule::rho(const LieElement& x) const {
  QMatrix m(dim, dim);
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != 0) m += action[k] * x[k];
  return m;
}

IrrepModule build_module(const LieAlgebra& g, const Weight& lambda, std::size_t cap) {
  const RootSystem& rs = g.roots();
  require_dominant(rs, lambda);
  const std::size_t expected = weyl_dim(rs, lambda);
  if (cap != 0 && expected > cap)
    throw Error(ErrorCode::DimensionCap, "V(" + rs.format_weight(lambda) + ") has dimension " + std::to_string(expected) +
                                             ", above the cap " + std::to_string(cap));
  const std::size_t r = rs.rank();
  const IVector top(lambda.coords.begin(), lambda.coords.begin() + static_cast<std::ptrdiff_t>(r));
  const SimpleGeneratorModule sg = construct_highest_weight(rs.cartan_matrix(), top, cap);

  IrrepModule m;
  m.label = lambda;
  m.dim = sg.dim;
  if (m.dim != expected) throw Error(ErrorCode::Internal, "constructed module has the wrong dimension");
  for (const auto& w : sg.weights) {
    Weight full{w};
    full.coords.insert(full.coords.end(), lambda.coords.begin() + static_cast<std::ptrdiff_t>(r), lambda.coords.end());
    m.weight_basis.push_back(std::move(full));
  }
  m.action.assign(g.dim(), QMatrix(m.dim, m.dim));
  for (std::size_t b = 0; b < rs.num_positive_roots(); ++b) {
    const auto& step = g.root_step(b);
    if (!step) {
      const IVector& beta = rs.positive_roots()[b];
      const auto i = static_cast<std::size_t>(std::find(beta.begin(), beta.end(), 1) - beta.begin());
      m.action[g.e(b)] = sg.e[i];
      m.action[g.f(b)] = sg.f[i];
      continue;
    }
    const std::size_t si = rs.simple_root_index(step->simple);
    const Rational inv(1, step->divisor);
    m.action[g.e(b)] = commutator(m.action[g.e(si)], m.action[g.e(step->rest)]) * inv;
    m.action[g.f(b)] = commutator(m.action[g.f(step->rest)], m.action[g.f(si)]) * inv;
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t v = 0; v < m.dim; ++v) m.action[g.h(i)](v, v) = m.weight_basis[v].coords[i];
  for (std::size_t k = 0; k < rs.torus_rank(); ++k)
    for (std::size_t v = 0; v < m.dim; ++v) m.action[g.t(k)](v, v) = lambda.coords[r + k];

  CharacterTable seen;
  for (const auto& w : m.weight_basis) ++seen[w];
  if (seen != freudenthal_multiplicities(rs, lambda)) throw Error(ErrorCode::Internal, "module weights disagree with Freudenthal");
  if (!satisfies_serre_relations(g, m)) throw Error(ErrorCode::Internal, "module violates the Chevalley-Serre relations");
  return m;
}

bool satisfies_serre_relations(const LieAlgebra& g, const IrrepModule& m) {
  const RootSystem& rs = g.roots();
  const std::size_t r = rs.rank();
  auto E = [&](std::size_t i) -> const QMatrix& { return m.action[g.e(rs.simple_root_index(i))]; };
  auto F = [&](std::size_t i) -> const QMatrix& { return m.action[g.f(rs.simple_root_index(i))]; };
  auto H = [&](std::size_t i) -> const QMatrix& { return m.action[g.h(i)]; };
  const QMatrix zero(m.dim, m.dim);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const long a = rs.cartan_matrix()[i][j];
      if (commutator(E(i), F(j)) != (i == j ? H(i) : zero)) return false;
      if (commutator(H(i), E(j)) != E(j) * Rational(a)) return false;
      if (commutator(H(i), F(j)) != F(j) * Rational(-a)) return false;
      if (commutator(H(i), H(j)) != zero) return false;
      if (i == j) continue;
      QMatrix xe = E(j), xf = F(j);
      for (long k = 0; k < 1 - a; ++k) {
        xe = commutator(E(i), xe);
        xf = commutator(F(i), xf);
      }
      if (!xe.is_zero() || !xf.is_zero()) return false;
    }
  for (std::size_t k = 0; k < rs.torus_rank(); ++k)
    for (std::size_t b = 0; b < g.dim(); ++b)
      if (!commutator(m.action[g.t(k)], m.action[b]).is_zero()) return false;
  return true;
}

bool satisfies_all_brackets(const LieAlgebra& g, const IrrepModule& m) {
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = a + 1; b < g.dim(); ++b) {
      QMatrix lhs(m.dim, m.dim);
      for (const auto& [c, v] : g.basis_bracket(a, b)) lhs += m.action[c] * v;
      if (lhs != commutator(m.action[a], m.action[b])) return false;
    }
  return true;
}

Weight dual_label(const RootSystem& rs, const Weight& lambda) {
  Weight out = lambda;
  if (rs.rank() > 0) {
    Weight neg = lambda;
    for (std::size_t i = 0; i < rs.rank(); ++i) neg.coords[i] = -neg.coords[i];
    out = rs.apply_word(longest_weyl_element(rs), neg);
  }
  for (std::size_t k = rs.rank(); k < out.coords.size(); ++k) out.coords[k] = -lambda.coords[k];
  return out;
}

CharacterTable character_product(const CharacterTable& a, const CharacterTable& b) {
  CharacterTable out;
  for (const auto& [wa, ma] : a)
    for (const auto& [wb, mb] : b) {
      Weight w = wa;
      for (std::size_t i = 0; i < w.coords.size(); ++i) w.coords[i] += wb.coords[i];
      out[w] += ma * mb;
    }
  return out;
}

CharacterTable character_sum(const CharacterTable& a, const CharacterTable& b, long scale) {
  CharacterTable out = a;
  for (const auto& [w, m] : b) {
    auto& slot = out[w];
    slot += scale * m;
    if (slot == 0) out.erase(w);
  }
  return out;
}

CharacterTable adams(const CharacterTable& a, long k) {
  CharacterTable out;
  for (const auto& [w, m] : a) {
    Weight s = w;
    for (auto& c : s.coords) c *= k;
    out[s] += m;
  }
  return out;
}

Decomposition decompose_character(const RootSystem& rs, CharacterTable chi) {
  Decomposition out;
  std::map<Weight, CharacterTable> cache;
  while (!chi.empty()) {
    const Weight* best = nullptr;
    Rational best_h;
    for (const auto& [w, m] : chi) {
      if (m == 0) continue;
      const Rational h = rs.weight_height(w);
      if (!best || h > best_h) {
        best = &w;
        best_h = h;
      }
    }
    if (!best) break;
    const Weight top = *best;
    const long m = chi.at(top);
    if (m < 0 || !rs.is_dominant(top)) throw Error(ErrorCode::Internal, "not a character: leading term " + rs.format_weight(top));
    auto it = cache.find(top);
    if (it == cache.end()) it = cache.emplace(top, freudenthal_multiplicities(rs, top)).first;
    chi = character_sum(chi, it->second, -m);
    out[top] += m;
  }
  return out;
}

Decomposition tensor_decompose(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
  return decompose_character(rs, character_product(freudenthal_multiplicities(rs, lambda), freudenthal_multiplicities(rs, mu)));
}

std::size_t decomposition_dim(const RootSystem& rs, const Decomposition& d) {
  std::size_t total = 0;
  for (const auto& [w, m] : d) total += static_cast<std::size_t>(m) * weyl_dim(rs, w);
  return total;
}

}  // namespace sph
