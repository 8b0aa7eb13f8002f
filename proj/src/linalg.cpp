#include "sph/linalg.hpp"

#include "sph/error.hpp"

#include <algorithm>
#include <cassert>

namespace sph {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorCode::Parse, "not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(std::span<const QVector> columns, std::size_t rows) {
  QMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    assert(columns[j].size() == rows);
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

QMatrix QMatrix::from_rows(std::span<const QVector> rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].size() == cols);
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QVector QMatrix::row(std::size_t i) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QVector QMatrix::column(std::size_t j) const {
  QVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

bool QMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

QMatrix& QMatrix::operator+=(const QMatrix& other) {
  assert(rows_ == other.rows_ && cols_ == other.cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& other) {
  assert(rows_ == other.rows_ && cols_ == other.cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

QMatrix& QMatrix::operator*=(const Rational& scalar) {
  for (auto& q : data_) q *= scalar;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  assert(a.cols_ == b.rows_);
  QMatrix c(a.rows_, b.cols_);
  // Generator matrices are very sparse; skip zero entries of a.
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (bkj != 0) c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

QVector operator*(const QMatrix& a, const QVector& v) {
  assert(a.cols_ == v.size());
  QVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (a(i, k) != 0 && v[k] != 0) out[i] += a(i, k) * v[k];
  return out;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

Echelon rref(QMatrix m) {
  Echelon out;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(lead_row, j));
    const Rational inv = 1 / m(lead_row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || m(i, col) == 0) continue;
      const Rational factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (m(lead_row, j) != 0) m(i, j) -= factor * m(lead_row, j);
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::size_t rank_of_vectors(std::span<const QVector> vectors, std::size_t length) {
  if (vectors.empty()) return 0;
  return rank(QMatrix::from_rows(vectors, length));
}

std::vector<QVector> nullspace(const QMatrix& m) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<QVector> span_basis(std::span<const QVector> vectors, std::size_t length) {
  if (vectors.empty()) return {};
  const Echelon e = rref(QMatrix::from_rows(vectors, length));
  std::vector<QVector> basis;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) basis.push_back(e.reduced.row(r));
  return basis;
}

std::optional<QVector> coordinates_in(std::span<const QVector> basis, const QVector& target) {
  const std::size_t n = target.size();
  if (basis.empty()) {
    if (is_zero(target)) return QVector{};
    return std::nullopt;
  }
  // Augmented system [basis columns | target].
  QMatrix m(n, basis.size() + 1);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = basis[j][i];
  for (std::size_t i = 0; i < n; ++i) m(i, basis.size()) = target[i];
  const Echelon e = rref(std::move(m));
  QVector coords(basis.size());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == basis.size()) return std::nullopt;
    coords[e.pivots[r]] = e.reduced(r, basis.size());
  }
  return coords;
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

QVector axpy(const QVector& x, const Rational& a, const QVector& y) {
  assert(x.size() == y.size());
  QVector out(x);
  if (a == 0) return out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (y[i] != 0) out[i] += a * y[i];
  return out;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) return std::nullopt;
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Echelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

void SparseSystem::reduce(Row& row) const {
  // Pivot rows are fully reduced against each other, so one sweep over the
  // row's own columns in increasing order suffices.
  for (auto it = row.begin(); it != row.end();) {
    auto pit = pivots_.find(it->first);
    if (pit == pivots_.end()) {
      ++it;
      continue;
    }
    const Rational factor = it->second;
    const std::size_t col = it->first;
    for (const auto& [c, v] : pit->second) {
      Rational& slot = row[c];
      slot -= factor * v;
    }
    // Drop exact zeros, then restart after the eliminated column.
    for (auto jt = row.begin(); jt != row.end();) {
      if (jt->second == 0) jt = row.erase(jt);
      else ++jt;
    }
    it = row.upper_bound(col);
  }
}

void SparseSystem::add_equation(Row row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->second == 0) it = row.erase(it);
    else ++it;
  }
  reduce(row);
  if (row.empty()) return;
  const std::size_t lead = row.begin()->first;
  const Rational inv = 1 / row.begin()->second;
  for (auto& [c, v] : row) v *= inv;
  // Keep existing pivot rows reduced with respect to the new pivot.
  for (auto& [pc, prow] : pivots_) {
    auto hit = prow.find(lead);
    if (hit == prow.end()) continue;
    const Rational factor = hit->second;
    for (const auto& [c, v] : row) prow[c] -= factor * v;
    for (auto jt = prow.begin(); jt != prow.end();) {
      if (jt->second == 0) jt = prow.erase(jt);
      else ++jt;
    }
  }
  pivots_.emplace(lead, std::move(row));
}

std::vector<QVector> SparseSystem::nullspace() const {
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < unknowns_; ++free) {
    if (pivots_.count(free)) continue;
    QVector v(unknowns_);
    v[free] = 1;
    for (const auto& [pc, prow] : pivots_) {
      auto hit = prow.find(free);
      if (hit != prow.end()) v[pc] = -hit->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

GMatrix::GMatrix(const QMatrix& real) : rows_(real.rows()), cols_(real.cols()), data_(rows_ * cols_) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j).re = real(i, j);
}

GMatrix GMatrix::identity(std::size_t n) { return GMatrix(QMatrix::identity(n)); }

GMatrix GMatrix::conj() const {
  GMatrix c(*this);
  for (auto& z : c.data_) z.im = -z.im;
  return c;
}

bool GMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const GaussRational& z) { return z.is_zero(); });
}

QMatrix GMatrix::real_part() const {
  QMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).re;
  return m;
}

QMatrix GMatrix::imag_part() const {
  QMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).im;
  return m;
}

GMatrix operator*(const GMatrix& a, const GMatrix& b) {
  assert(a.cols_ == b.rows_);
  GMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GaussRational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) = c(i, j) + aik * b(k, j);
    }
  return c;
}

GMatrix operator-(const GMatrix& a, const GMatrix& b) {
  assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
  GMatrix c(a);
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = c.data_[k] - b.data_[k];
  return c;
}

GMatrix operator*(const GaussRational& s, const GMatrix& a) {
  GMatrix c(a);
  for (auto& z : c.data_) z = s * z;
  return c;
}

}  // namespace sph
