#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "endosplit/rational.hpp"

namespace endosplit {

using QVector = std::vector<Rat>;

// Coordinate vector of an algebra element relative to the algebra's
// distinguished basis. Same representation as QVector on purpose.
using AlgebraElement = QVector;

QVector vec_add(const QVector& a, const QVector& b);
QVector vec_sub(const QVector& a, const QVector& b);
QVector vec_scale(const Rat& c, const QVector& a);
bool vec_is_zero(const QVector& a);
QVector vec_zero(std::size_t n);
QVector vec_unit(std::size_t n, std::size_t i);

// Dense row-major matrix over Rat.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Rat(0)) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static QMatrix from_rat_rows(const std::vector<QVector>& rows);
  static QMatrix from_columns(const std::vector<QVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  QVector row(std::size_t i) const;
  QVector col(std::size_t j) const;
  void set_col(std::size_t j, const QVector& v);

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix scaled(const Rat& c) const;
  QVector apply(const QVector& v) const;  // m . v
  QMatrix transpose() const;

  bool operator==(const QMatrix& o) const;
  bool operator!=(const QMatrix& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_integral() const;

  Rat trace() const;

  std::string to_string() const;  // plain-text fraction grid

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> e_;
};

QMatrix hstack(const QMatrix& a, const QMatrix& b);
QMatrix vstack(const QMatrix& a, const QMatrix& b);
QMatrix block_diag(const std::vector<QMatrix>& blocks);

// m x n matrix whose columns are the given vectors (all of length m).
inline QMatrix columns(const std::vector<QVector>& cols) { return QMatrix::from_columns(cols); }

}  // namespace endosplit
