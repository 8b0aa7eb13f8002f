#pragma once

// Exact rational linear algebra: dense matrices over Q, echelon forms,
// kernels, span membership, and a sparse incremental solver for the large
// homogeneous systems that show up in intertwiner computations.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sph {

using Rational = mpq_class;
using QVector = std::vector<Rational>;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_columns(std::span<const QVector> columns, std::size_t rows);
  static QMatrix from_rows(std::span<const QVector> rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QVector row(std::size_t i) const;
  QVector column(std::size_t j) const;

  QMatrix transpose() const;
  bool is_zero() const;
  bool is_diagonal() const;

  QMatrix& operator+=(const QMatrix& other);
  QMatrix& operator-=(const QMatrix& other);
  QMatrix& operator*=(const Rational& scalar);

  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const Rational& s) { return a *= s; }
  friend QMatrix operator*(const Rational& s, QMatrix a) { return a *= s; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QVector operator*(const QMatrix& a, const QVector& v);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// a*b - b*a
QMatrix commutator(const QMatrix& a, const QMatrix& b);

struct Echelon {
  QMatrix reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

Echelon rref(QMatrix m);
std::size_t rank(const QMatrix& m);
std::size_t rank_of_vectors(std::span<const QVector> vectors, std::size_t length);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<QVector> nullspace(const QMatrix& m);

/// Echelon basis of the span of the given vectors.
std::vector<QVector> span_basis(std::span<const QVector> vectors, std::size_t length);

/// Coordinates c with sum c_k basis[k] == target, if target lies in the span.
/// The basis must be linearly independent.
std::optional<QVector> coordinates_in(std::span<const QVector> basis, const QVector& target);

bool is_zero(const QVector& v);
QVector axpy(const QVector& x, const Rational& a, const QVector& y);  // x + a*y

std::optional<QMatrix> inverse(const QMatrix& m);

/// Homogeneous sparse linear system, eliminated as equations arrive. Rows are
/// kept fully reduced against the pivots seen so far, so short equations
/// (the common case for weight-graded problems) stay short.
class SparseSystem {
 public:
  explicit SparseSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  using Row = std::map<std::size_t, Rational>;

  void add_equation(Row row);
  std::size_t unknowns() const noexcept { return unknowns_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  std::vector<QVector> nullspace() const;

 private:
  void reduce(Row& row) const;

  std::size_t unknowns_;
  std::map<std::size_t, Row> pivots_;  // pivot column -> row with leading 1
};

/// Complex numbers with rational real and imaginary parts.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  GaussRational conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
};

class GMatrix {
 public:
  GMatrix() = default;
  GMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit GMatrix(const QMatrix& real);

  static GMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  GaussRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GaussRational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  GMatrix conj() const;
  bool is_zero() const;
  QMatrix real_part() const;
  QMatrix imag_part() const;

  friend GMatrix operator*(const GMatrix& a, const GMatrix& b);
  friend GMatrix operator-(const GMatrix& a, const GMatrix& b);
  friend GMatrix operator*(const GaussRational& s, const GMatrix& a);
  friend bool operator==(const GMatrix& a, const GMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussRational> data_;
};

}  // namespace sph
