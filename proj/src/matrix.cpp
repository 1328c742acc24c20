#include "adicomp/matrix.hpp"

#include "adicomp/error.hpp"

#include <sstream>

namespace adicomp {

FreeVec zero_vec(const RingSpec &ring, std::size_t n) {
  return FreeVec(n, ring.zero());
}

FreeVec unit_vec(const RingSpec &ring, std::size_t n, std::size_t i) {
  FreeVec v = zero_vec(ring, n);
  v[i] = ring.one();
  return v;
}

FreeVec add(const FreeVec &a, const FreeVec &b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ParentMismatch, "rank mismatch");
  FreeVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

FreeVec sub(const FreeVec &a, const FreeVec &b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ParentMismatch, "rank mismatch");
  FreeVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

FreeVec scale(const RingElem &c, const FreeVec &v) {
  FreeVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

bool is_zero(const FreeVec &v) {
  for (const auto &e : v)
    if (!e.is_zero()) return false;
  return true;
}

std::vector<std::string> element_strings(const FreeVec &v) {
  std::vector<std::string> out;
  for (const auto &e : v) out.push_back(e.str());
  return out;
}

std::string format_vec(const FreeVec &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

Matrix::Matrix(RingSpec ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      a_(rows * cols, ring_.zero()) {}

Matrix Matrix::identity(const RingSpec &ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

Matrix Matrix::from_columns(const RingSpec &ring, std::size_t rows,
                            const std::vector<FreeVec> &cols) {
  Matrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw Error(ErrorCode::ParentMismatch, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

FreeVec Matrix::column(std::size_t j) const {
  FreeVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<FreeVec> Matrix::columns() const {
  std::vector<FreeVec> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

FreeVec Matrix::apply(const FreeVec &v) const {
  if (v.size() != cols_) throw Error(ErrorCode::ParentMismatch, "apply: rank mismatch");
  FreeVec r = zero_vec(ring_, rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!(*this)(i, j).is_zero()) r[i] = r[i] + (*this)(i, j) * v[j];
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto &e : a_)
    if (!e.is_zero()) return false;
  return true;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
  }
  os << "]";
  return os.str();
}

Matrix operator*(const Matrix &a, const Matrix &b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::ParentMismatch, "matrix shape mismatch");
  Matrix r(a.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const RingElem &x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) r(i, j) = r(i, j) + x * b(k, j);
    }
  return r;
}

Matrix operator+(const Matrix &a, const Matrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorCode::ParentMismatch, "matrix shape mismatch");
  Matrix r(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
  return r;
}

bool operator==(const Matrix &a, const Matrix &b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

RingElem lift(const RingElem &e) {
  const RingSpec &r = e.parent();
  if (r.kind() != RingKind::Quotient && r.kind() != RingKind::PowerSeries) return e;
  return RingElem(r.ambient(), e.poly());
}

FreeVec lift(const FreeVec &v) {
  FreeVec r;
  r.reserve(v.size());
  for (const auto &e : v) r.push_back(lift(e));
  return r;
}

RingElem push(const RingSpec &ring, const RingElem &e) {
  if (e.parent() == ring) return e;
  return ring.make(e.poly());
}

FreeVec push(const RingSpec &ring, const FreeVec &v) {
  FreeVec r;
  r.reserve(v.size());
  for (const auto &e : v) r.push_back(push(ring, e));
  return r;
}

} // namespace adicomp
