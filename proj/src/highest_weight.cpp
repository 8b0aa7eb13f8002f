#include "sph/highest_weight.hpp"

#include "sph/error.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace sph {

namespace {

struct WeightSpace {
  IVector n;   // lambda - mu in simple-root coordinates
  IVector mu;  // weight in fundamental coordinates
  std::size_t depth = 0;
  std::size_t dim = 0;
  std::size_t offset = 0;
  std::vector<QMatrix> e;  // e[j]: V_mu -> V_{mu + alpha_j}; empty when that space is absent
  std::vector<QMatrix> f;  // f[i]: V_{mu + alpha_i} -> V_mu
};

}  // namespace

SimpleGeneratorModule construct_highest_weight(const std::vector<std::vector<int>>& cartan,
                                               const IVector& lambda, std::size_t cap) {
  const std::size_t r = cartan.size();
  std::map<IVector, std::unique_ptr<WeightSpace>> spaces;
  auto find = [&](const IVector& n) -> WeightSpace* {
    for (long c : n)
      if (c < 0) return nullptr;
    auto it = spaces.find(n);
    return it == spaces.end() ? nullptr : it->second.get();
  };
  auto shifted = [](IVector n, std::size_t i, long by) {
    n[i] += by;
    return n;
  };

  auto top = std::make_unique<WeightSpace>();
  top->n = IVector(r, 0);
  top->mu = lambda;
  top->dim = 1;
  top->e.resize(r);
  top->f.resize(r);
  std::vector<WeightSpace*> level{top.get()};
  spaces.emplace(top->n, std::move(top));
  std::size_t total = 1;
  if (cap != 0 && total > cap) throw Error(ErrorCode::DimensionCap, "module dimension exceeds cap");

  for (std::size_t depth = 1; !level.empty(); ++depth) {
    std::vector<IVector> targets;
    for (auto* s : level)
      for (std::size_t i = 0; i < r; ++i) targets.push_back(shifted(s->n, i, 1));
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    std::vector<WeightSpace*> next;
    for (const auto& n : targets) {
      IVector mu = lambda;
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) mu[j] -= static_cast<long>(cartan[j][i]) * n[i];

      std::vector<WeightSpace*> up(r);
      std::vector<std::size_t> seg_off(r + 1, 0);
      for (std::size_t j = 0; j < r; ++j) {
        up[j] = find(shifted(n, j, -1));
        seg_off[j + 1] = seg_off[j] + (up[j] ? up[j]->dim : 0);
      }
      const std::size_t sig_len = seg_off[r];

      // Candidates f_i b, b running over the basis of V_{mu + alpha_i}.
      std::vector<std::pair<std::size_t, std::size_t>> cands;
      std::vector<QVector> sigs;
      for (std::size_t i = 0; i < r; ++i) {
        WeightSpace* src = up[i];
        if (!src) continue;
        for (std::size_t b = 0; b < src->dim; ++b) {
          QVector sig(sig_len);
          for (std::size_t j = 0; j < r; ++j) {
            WeightSpace* tgt = up[j];
            if (!tgt) continue;
            // e_j f_i b = f_i e_j b + delta_ij h_i b.
            if (find(shifted(src->n, j, -1)) != nullptr) {
              const QVector fi_ejb = tgt->f[i] * src->e[j].column(b);
              for (std::size_t k = 0; k < tgt->dim; ++k) sig[seg_off[j] + k] += fi_ejb[k];
            }
            if (i == j) sig[seg_off[j] + b] += src->mu[i];
          }
          cands.emplace_back(i, b);
          sigs.push_back(std::move(sig));
        }
      }
      if (cands.empty() || sig_len == 0) continue;

      const Echelon ech = rref(QMatrix::from_columns(sigs, sig_len));
      const std::size_t dim = ech.pivots.size();
      if (dim == 0) continue;
      total += dim;
      if (cap != 0 && total > cap) throw Error(ErrorCode::DimensionCap, "module dimension exceeds cap");

      auto space = std::make_unique<WeightSpace>();
      space->n = n;
      space->mu = mu;
      space->depth = depth;
      space->dim = dim;
      space->e.resize(r);
      space->f.resize(r);
      for (std::size_t j = 0; j < r; ++j) {
        if (!up[j]) continue;
        QMatrix ej(up[j]->dim, dim);
        for (std::size_t t = 0; t < dim; ++t)
          for (std::size_t k = 0; k < up[j]->dim; ++k) ej(k, t) = sigs[ech.pivots[t]][seg_off[j] + k];
        space->e[j] = std::move(ej);
      }
      for (std::size_t i = 0; i < r; ++i)
        if (up[i]) space->f[i] = QMatrix(dim, up[i]->dim);
      for (std::size_t c = 0; c < cands.size(); ++c) {
        const auto [i, b] = cands[c];
        for (std::size_t t = 0; t < dim; ++t) space->f[i](t, b) = ech.reduced(t, c);
      }
      next.push_back(space.get());
      spaces.emplace(n, std::move(space));
    }
    level = std::move(next);
  }

  std::vector<WeightSpace*> ordered;
  for (auto& [n, s] : spaces) ordered.push_back(s.get());
  std::sort(ordered.begin(), ordered.end(), [](const WeightSpace* a, const WeightSpace* b) {
    if (a->depth != b->depth) return a->depth < b->depth;
    return std::lexicographical_compare(b->mu.begin(), b->mu.end(), a->mu.begin(), a->mu.end());
  });
  SimpleGeneratorModule out;
  for (auto* s : ordered) {
    s->offset = out.dim;
    out.dim += s->dim;
    for (std::size_t k = 0; k < s->dim; ++k) {
      out.weights.push_back(s->mu);
      out.depth.push_back(s->depth);
    }
  }
  out.e.assign(r, QMatrix(out.dim, out.dim));
  out.f.assign(r, QMatrix(out.dim, out.dim));
  for (auto* s : ordered) {
    for (std::size_t j = 0; j < r; ++j) {
      WeightSpace* above = find(shifted(s->n, j, -1));
      if (!above) continue;
      if (s->e[j].rows() == above->dim && s->e[j].cols() == s->dim)
        for (std::size_t a = 0; a < above->dim; ++a)
          for (std::size_t b = 0; b < s->dim; ++b) out.e[j](above->offset + a, s->offset + b) = s->e[j](a, b);
      if (s->f[j].rows() == s->dim && s->f[j].cols() == above->dim)
        for (std::size_t a = 0; a < s->dim; ++a)
          for (std::size_t b = 0; b < above->dim; ++b) out.f[j](s->offset + a, above->offset + b) = s->f[j](a, b);
    }
  }
  return out;
}

}  // namespace sph
