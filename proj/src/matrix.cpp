#include "endosplit/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace endosplit {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");
  for (char c : s) {
    if (c == '.' || c == 'e' || c == 'E')
      throw std::invalid_argument("rat_from_string: floating-point literal rejected: " + s);
  }
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_from_string: not an exact fraction: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("rat_from_string: zero denominator: " + s);
  q.canonicalize();
  return q;
}

QVector vec_add(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: length mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVector vec_sub(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub: length mismatch");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVector vec_scale(const Rat& c, const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool vec_is_zero(const QVector& a) {
  for (const Rat& x : a)
    if (x != 0) return false;
  return true;
}

QVector vec_zero(std::size_t n) { return QVector(n, Rat(0)); }

QVector vec_unit(std::size_t n, std::size_t i) {
  QVector v(n, Rat(0));
  v[i] = 1;
  return v;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  QMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("from_rows: ragged rows");
    std::size_t j = 0;
    for (long v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

QMatrix QMatrix::from_rat_rows(const std::vector<QVector>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.front().size();
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("from_rat_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols) {
  std::size_t c = cols.size();
  std::size_t r = c == 0 ? 0 : cols.front().size();
  QMatrix m(r, c);
  for (std::size_t j = 0; j < c; ++j) {
    if (cols[j].size() != r) throw std::invalid_argument("from_columns: ragged columns");
    for (std::size_t i = 0; i < r; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

QVector QMatrix::row(std::size_t i) const {
  QVector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

QVector QMatrix::col(std::size_t j) const {
  QVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void QMatrix::set_col(std::size_t j, const QVector& v) {
  if (v.size() != rows_) throw std::invalid_argument("set_col: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("QMatrix::operator*: shape mismatch");
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("QMatrix::operator+: shape mismatch");
  QMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("QMatrix::operator-: shape mismatch");
  QMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

QMatrix QMatrix::scaled(const Rat& c) const {
  QMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = c * e_[i];
  return r;
}

QVector QMatrix::apply(const QVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("QMatrix::apply: length mismatch");
  QVector r(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * v[j];
  return r;
}

QMatrix QMatrix::transpose() const {
  QMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool QMatrix::operator==(const QMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool QMatrix::is_zero() const {
  for (const Rat& x : e_)
    if (x != 0) return false;
  return true;
}

bool QMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool QMatrix::is_integral() const {
  for (const Rat& x : e_)
    if (!rat_is_integer(x)) return false;
  return true;
}

Rat QMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: non-square");
  Rat t(0);
  for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

std::string QMatrix::to_string() const {
  // Column-aligned fraction grid.
  std::vector<std::string> cells(rows_ * cols_);
  std::vector<std::size_t> width(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      cells[i * cols_ + j] = rat_to_string(at(i, j));
      width[j] = std::max(width[j], cells[i * cols_ + j].size());
    }
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[ ";
    for (std::size_t j = 0; j < cols_; ++j) {
      const std::string& s = cells[i * cols_ + j];
      os << std::string(width[j] - s.size(), ' ') << s << (j + 1 < cols_ ? "  " : " ");
    }
    os << "]\n";
  }
  return os.str();
}

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  QMatrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  QMatrix r(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
  return r;
}

QMatrix block_diag(const std::vector<QMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const QMatrix& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  QMatrix m(r, c);
  std::size_t i0 = 0, j0 = 0;
  for (const QMatrix& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m.at(i0 + i, j0 + j) = b.at(i, j);
    i0 += b.rows();
    j0 += b.cols();
  }
  return m;
}

}  // namespace endosplit
