#include "sph/lie_algebra.hpp"

#include "sph/error.hpp"
#include "sph/highest_weight.hpp"

#include <algorithm>
#include <sstream>

namespace sph {

namespace {

/// Chevalley basis of one simple factor realised inside its adjoint module.
struct FactorBasis {
  std::vector<QMatrix> e, h, f;
  std::vector<std::optional<LieAlgebra::RootStep>> steps;  // local root indices
};

FactorBasis realise_factor(const RootSystem& local) {
  const std::size_t r = local.rank();
  const std::size_t n = local.num_positive_roots();
  const IVector& highest = local.positive_roots().back();
  const SimpleGeneratorModule adj = construct_highest_weight(local.cartan_matrix(), local.root_to_weight(highest));

  FactorBasis fb;
  fb.e.resize(n);
  fb.f.resize(n);
  fb.steps.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    const IVector& beta = local.positive_roots()[b];
    if (local.height(b) == 1) {
      const auto i = static_cast<std::size_t>(std::find(beta.begin(), beta.end(), 1) - beta.begin());
      fb.e[b] = adj.e[i];
      fb.f[b] = adj.f[i];
      continue;
    }
    for (std::size_t i = 0; i < r; ++i) {
      IVector gamma = beta;
      gamma[i] -= 1;
      auto g = local.root_index(gamma);
      if (!g) continue;
      long p = 0;
      IVector down = gamma;
      while (true) {
        down[i] -= 1;
        if (!local.root_index(down)) break;
        ++p;
      }
      const Rational inv(1, p + 1);
      fb.e[b] = commutator(adj.e[i], fb.e[*g]) * inv;
      fb.f[b] = commutator(fb.f[*g], adj.f[i]) * inv;
      fb.steps[b] = LieAlgebra::RootStep{i, *g, p + 1};
      break;
    }
  }
  for (std::size_t i = 0; i < r; ++i) fb.h.push_back(commutator(adj.e[i], adj.f[i]));
  return fb;
}

QVector flatten(const QMatrix& m) {
  QVector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

}  // namespace

LieAlgebra::LieAlgebra(RootSystem rs) : rs_(std::move(rs)) {
  const std::size_t npos = rs_.num_positive_roots();
  for (std::size_t b = 0; b < npos; ++b) labels_.push_back({Kind::E, b});
  for (std::size_t i = 0; i < rs_.rank(); ++i) labels_.push_back({Kind::H, i});
  for (std::size_t k = 0; k < rs_.torus_rank(); ++k) labels_.push_back({Kind::T, k});
  for (std::size_t b = 0; b < npos; ++b) labels_.push_back({Kind::F, b});
  const std::size_t n = dim();
  table_.assign(n * n, {});
  steps_.assign(npos, std::nullopt);

  const auto& factors = rs_.type().factors;
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    const RootSystem local = RootSystem::build(CartanType{{factors[fi]}, 0});
    const FactorBasis fb = realise_factor(local);
    const std::size_t off = rs_.factor_offset(fi);
    const std::size_t lr = local.rank();
    const std::size_t ln = local.num_positive_roots();

    auto global_root = [&](std::size_t local_root) {
      IVector g(rs_.rank(), 0);
      const IVector& l = local.positive_roots()[local_root];
      for (std::size_t j = 0; j < lr; ++j) g[off + j] = l[j];
      return *rs_.root_index(g);
    };
    std::vector<QMatrix> mats;
    std::vector<std::size_t> global_index;
    for (std::size_t b = 0; b < ln; ++b) {
      mats.push_back(fb.e[b]);
      global_index.push_back(e(global_root(b)));
    }
    for (std::size_t i = 0; i < lr; ++i) {
      mats.push_back(fb.h[i]);
      global_index.push_back(h(off + i));
    }
    for (std::size_t b = 0; b < ln; ++b) {
      mats.push_back(fb.f[b]);
      global_index.push_back(f(global_root(b)));
    }
    for (std::size_t b = 0; b < ln; ++b) {
      if (!fb.steps[b]) continue;
      RootStep s = *fb.steps[b];
      s.simple += off;
      s.rest = global_root(s.rest);
      steps_[global_root(b)] = s;
    }

    // Coordinates of a matrix in the faithful image: pick entry positions on
    // which the basis matrices are independent, then verify in full.
    std::vector<QVector> flat;
    for (const auto& m : mats) flat.push_back(flatten(m));
    const std::size_t len = flat.front().size();
    const Echelon ech = rref(QMatrix::from_rows(flat, len));
    if (ech.pivots.size() != mats.size()) throw Error(ErrorCode::Internal, "adjoint realisation not faithful");
    QMatrix sub_t(mats.size(), mats.size());  // sub_t(t, k) = flat[k][pivot t]
    for (std::size_t t = 0; t < mats.size(); ++t)
      for (std::size_t k = 0; k < mats.size(); ++k) sub_t(t, k) = flat[k][ech.pivots[t]];
    const QMatrix solve = *inverse(sub_t);

    for (std::size_t a = 0; a < mats.size(); ++a) {
      for (std::size_t b = 0; b < mats.size(); ++b) {
        const QVector y = flatten(commutator(mats[a], mats[b]));
        QVector rhs(mats.size());
        for (std::size_t t = 0; t < mats.size(); ++t) rhs[t] = y[ech.pivots[t]];
        const QVector c = solve * rhs;
        QVector check(len);
        for (std::size_t k = 0; k < mats.size(); ++k) {
          if (c[k] == 0) continue;
          for (std::size_t idx = 0; idx < len; ++idx)
            if (flat[k][idx] != 0) check[idx] += c[k] * flat[k][idx];
        }
        if (check != y) throw Error(ErrorCode::Internal, "bracket outside the adjoint image");
        auto& slot = table_[global_index[a] * n + global_index[b]];
        for (std::size_t k = 0; k < mats.size(); ++k)
          if (c[k] != 0) slot.emplace_back(global_index[k], c[k]);
        std::sort(slot.begin(), slot.end(), [](const auto& x, const auto& y2) { return x.first < y2.first; });
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    QMatrix m(n, n);
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& [c, v] : table_[k * n + b]) m(c, b) = v;
    ad_basis_.push_back(std::move(m));
  }
}

std::shared_ptr<const LieAlgebra> LieAlgebra::make(std::string_view type_label) {
  return std::make_shared<const LieAlgebra>(RootSystem::build(type_label));
}

std::string LieAlgebra::basis_name(std::size_t k) const {
  const auto& l = labels_[k];
  std::ostringstream os;
  auto root_str = [&](std::size_t b) {
    std::ostringstream r;
    r << "(";
    const auto& v = rs_.positive_roots()[b];
    for (std::size_t j = 0; j < v.size(); ++j) r << (j ? "," : "") << v[j];
    r << ")";
    return r.str();
  };
  switch (l.kind) {
    case Kind::E: os << "e" << root_str(l.index); break;
    case Kind::F: os << "f" << root_str(l.index); break;
    case Kind::H: os << "h" << (l.index + 1); break;
    case Kind::T: os << "t" << (l.index + 1); break;
  }
  return os.str();
}

LieElement LieAlgebra::unit(std::size_t k) const {
  LieElement x(dim());
  x[k] = 1;
  return x;
}

LieElement LieAlgebra::bracket(const LieElement& x, const LieElement& y) const {
  const std::size_t n = dim();
  LieElement out(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (y[b] == 0) continue;
      const Rational s = x[a] * y[b];
      for (const auto& [c, v] : table_[a * n + b]) out[c] += s * v;
    }
  }
  return out;
}

QMatrix LieAlgebra::ad(const LieElement& x) const {
  QMatrix m(dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k)
    if (x[k] != 0) m += ad_basis_[k] * x[k];
  return m;
}

long LieAlgebra::structure_constant(std::size_t a, int sign_a, std::size_t b, int sign_b) const {
  const auto& ra = rs_.positive_roots()[a];
  const auto& rb = rs_.positive_roots()[b];
  IVector sum(rs_.rank());
  for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = sign_a * ra[j] + sign_b * rb[j];
  IVector neg = sum;
  for (auto& c : neg) c = -c;
  std::size_t target;
  if (auto p = rs_.root_index(sum)) target = e(*p);
  else if (auto q = rs_.root_index(neg)) target = f(*q);
  else return 0;
  const std::size_t xa = sign_a > 0 ? e(a) : f(a);
  const std::size_t xb = sign_b > 0 ? e(b) : f(b);
  for (const auto& [c, v] : basis_bracket(xa, xb)) {
    if (c != target) continue;
    if (v.get_den() != 1) throw Error(ErrorCode::Internal, "non-integral structure constant");
    return v.get_num().get_si();
  }
  return 0;
}

LieElement LieAlgebra::coroot_element(std::size_t root) const { return bracket(unit(e(root)), unit(f(root))); }

Rational LieAlgebra::killing(const LieElement& x, const LieElement& y) const {
  const QMatrix p = ad(x) * ad(y);
  Rational tr = 0;
  for (std::size_t i = 0; i < dim(); ++i) tr += p(i, i);
  return tr;
}

Rational LieAlgebra::invariant_form(const LieElement& x, const LieElement& y) const {
  Rational v = killing(x, y);
  for (std::size_t k = 0; k < rs_.torus_rank(); ++k) v += x[t(k)] * y[t(k)];
  return v;
}

std::vector<LieElement> LieAlgebra::cartan_basis() const {
  std::vector<LieElement> out;
  for (std::size_t i = 0; i < rs_.rank(); ++i) out.push_back(unit(h(i)));
  for (std::size_t k = 0; k < rs_.torus_rank(); ++k) out.push_back(unit(t(k)));
  return out;
}

namespace {

QMatrix factor_matrix(const LieAlgebra& g, const GroupFactor& factor) {
  const std::size_t n = g.dim();
  if (factor.kind == GroupFactor::Kind::TorusScale) {
    if (factor.parameter == 0) throw Error(ErrorCode::DegenerateInput, "torus scaling by zero");
    const auto cartan = g.cartan_basis();
    if (factor.cartan_index >= cartan.size()) throw Error(ErrorCode::DegenerateInput, "torus scaling index out of range");
    QMatrix m = QMatrix::identity(n);
    if (factor.cartan_index >= g.roots().rank()) return m;  // central torus acts trivially
    const std::size_t i = factor.cartan_index;
    const auto& rs = g.roots();
    for (std::size_t b = 0; b < rs.num_positive_roots(); ++b) {
      long ev = 0;  // beta(h_i)
      for (std::size_t j = 0; j < rs.rank(); ++j) ev += rs.cartan_matrix()[i][j] * rs.positive_roots()[b][j];
      Rational up = 1;
      mpq_class base = factor.parameter;
      for (long k = 0; k < std::labs(ev); ++k) up *= base;
      if (ev < 0) up = 1 / up;
      m(g.e(b), g.e(b)) = up;
      m(g.f(b), g.f(b)) = 1 / up;
    }
    return m;
  }
  if (factor.direction.size() != n) throw Error(ErrorCode::DegenerateInput, "direction has wrong length");
  const QMatrix a = g.ad(factor.direction);
  QMatrix result = QMatrix::identity(n);
  QMatrix power = QMatrix::identity(n);
  Rational coeff = 1;
  for (std::size_t k = 1;; ++k) {
    power = power * a;
    if (power.is_zero()) break;
    if (k > n) throw Error(ErrorCode::NonNilpotent, "exponential requested along a direction that is not ad-nilpotent");
    coeff = coeff * factor.parameter / static_cast<long>(k);
    if (coeff != 0) result += power * coeff;
    else if (factor.parameter == 0) {
      // t = 0 still requires nilpotency; keep checking powers.
      continue;
    }
  }
  return result;
}

}  // namespace

QMatrix adjoint_matrix(const LieAlgebra& g, const GroupWord& word) {
  QMatrix m = QMatrix::identity(g.dim());
  for (const auto& factor : word) m = m * factor_matrix(g, factor);
  return m;
}

LieElement adjoint_action(const LieAlgebra& g, const GroupWord& word, const LieElement& x) {
  return adjoint_matrix(g, word) * x;
}

SubalgebraSpec::SubalgebraSpec(std::shared_ptr<const LieAlgebra> ambient, std::vector<LieElement> spanning_set,
                               std::string name)
    : ambient_(std::move(ambient)), name_(std::move(name)), spanning_(std::move(spanning_set)) {
  const LieAlgebra& g = *ambient_;
  for (const auto& x : spanning_)
    if (x.size() != g.dim()) throw Error(ErrorCode::NotSubalgebra, "spanning vector has wrong length for " + g.roots().type().label());
  basis_ = span_basis(spanning_, g.dim());
  for (std::size_t a = 0; a < basis_.size(); ++a)
    for (std::size_t b = a + 1; b < basis_.size(); ++b)
      if (!contains(g.bracket(basis_[a], basis_[b])))
        throw Error(ErrorCode::NotSubalgebra, "span '" + name_ + "' is not closed under the bracket");

  QMatrix gram(dim(), dim());
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = a; b < dim(); ++b) gram(a, b) = gram(b, a) = g.invariant_form(basis_[a], basis_[b]);
  reductive_ = rank(gram) == dim();

  const auto cartan = g.cartan_basis();
  if (std::all_of(cartan.begin(), cartan.end(), [&](const LieElement& x) { return contains(x); })) {
    const auto& rs = g.roots();
    for (const auto& word : rs.weyl_group()) {
      bool all = true;
      for (std::size_t b = 0; b < rs.num_positive_roots() && all; ++b) {
        // w(-beta) = -w(beta)
        const IVector img = rs.apply_word_to_root(word, rs.positive_roots()[b]);
        IVector neg = img;
        for (auto& c : neg) c = -c;
        std::size_t idx;
        if (auto p = rs.root_index(neg)) idx = g.e(*p);
        else idx = g.f(*rs.root_index(img));
        all = contains(g.unit(idx));
      }
      if (all) {
        parabolic_ = true;
        twist_ = word;
        break;
      }
    }
  }
}

bool SubalgebraSpec::contains(const LieElement& x) const {
  // basis_ is in reduced row echelon form: subtract the pivot components.
  LieElement rest = x;
  for (const auto& b : basis_) {
    std::size_t p = 0;
    while (b[p] == 0) ++p;
    if (rest[p] != 0) rest = axpy(rest, -rest[p], b);
  }
  return is_zero(rest);
}

bool SubalgebraSpec::contains(const SubalgebraSpec& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const LieElement& x) { return contains(x); });
}

std::optional<QVector> SubalgebraSpec::coordinates(const LieElement& x) const {
  QVector c(basis_.size());
  LieElement rest = x;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    std::size_t p = 0;
    while (basis_[k][p] == 0) ++p;
    c[k] = rest[p];
    if (rest[p] != 0) rest = axpy(rest, -c[k], basis_[k]);
  }
  if (!is_zero(rest)) return std::nullopt;
  return c;
}

QMatrix SubalgebraSpec::restricted_ad(const LieElement& x) const {
  QMatrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const auto c = coordinates(ambient_->bracket(x, basis_[j]));
    if (!c) throw Error(ErrorCode::NotSubalgebra, "element does not normalise the subalgebra");
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = (*c)[i];
  }
  return m;
}

SubalgebraSpec named_subalgebra(std::shared_ptr<const LieAlgebra> g, const std::string& name) {
  const auto& rs = g->roots();
  const std::size_t npos = rs.num_positive_roots();
  std::vector<LieElement> span;
  if (name == "full") {
    for (std::size_t k = 0; k < g->dim(); ++k) span.push_back(g->unit(k));
  } else if (name == "zero" || name == "0") {
  } else if (name == "cartan") {
    span = g->cartan_basis();
  } else if (name == "borel") {
    span = g->cartan_basis();
    for (std::size_t b = 0; b < npos; ++b) span.push_back(g->unit(g->f(b)));
  } else if (name == "nilradical") {
    for (std::size_t b = 0; b < npos; ++b) span.push_back(g->unit(g->f(b)));
  } else if (name == "diagonal") {
    const auto& fs = rs.type().factors;
    if (fs.size() != 2 || !(fs[0] == fs[1]))
      throw Error(ErrorCode::UnknownSymbol, "'diagonal' needs two isomorphic simple factors, got " + rs.type().label());
    const std::size_t r1 = static_cast<std::size_t>(fs[0].rank);
    for (std::size_t b = 0; b < npos; ++b) {
      const IVector& beta = rs.positive_roots()[b];
      if (std::any_of(beta.begin() + static_cast<std::ptrdiff_t>(r1), beta.end(), [](long c) { return c != 0; })) continue;
      IVector twin(rs.rank(), 0);
      for (std::size_t j = 0; j < r1; ++j) twin[r1 + j] = beta[j];
      const std::size_t b2 = *rs.root_index(twin);
      LieElement xe = g->unit(g->e(b)), xf = g->unit(g->f(b));
      xe[g->e(b2)] = 1;
      xf[g->f(b2)] = 1;
      span.push_back(xe);
      span.push_back(xf);
    }
    for (std::size_t i = 0; i < r1; ++i) {
      LieElement x = g->unit(g->h(i));
      x[g->h(r1 + i)] = 1;
      span.push_back(x);
    }
  } else if (name == "principal") {
    if (rs.rank() == 0) throw Error(ErrorCode::UnknownSymbol, "'principal' needs a semisimple part");
    LieElement e = g->zero(), h = g->zero(), f = g->zero();
    for (std::size_t b = 0; b < npos; ++b) {
      const LieElement hb = g->coroot_element(b);
      for (std::size_t k = 0; k < g->dim(); ++k) h[k] += hb[k];
    }
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      e[g->e(rs.simple_root_index(i))] = 1;
      f[g->f(rs.simple_root_index(i))] = h[g->h(i)];
    }
    span = {e, h, f};
  } else {
    throw Error(ErrorCode::UnknownSymbol, "unknown subalgebra name '" + name + "'");
  }
  return SubalgebraSpec(std::move(g), std::move(span), name);
}

SubalgebraSpec bracket_span(const SubalgebraSpec& a, const SubalgebraSpec& b, std::string name) {
  const LieAlgebra& g = a.ambient();
  std::vector<LieElement> span;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) {
      auto z = g.bracket(x, y);
      if (!is_zero(z)) span.push_back(std::move(z));
    }
  return SubalgebraSpec(a.ambient_ptr(), std::move(span), std::move(name));
}

}  // namespace sph
