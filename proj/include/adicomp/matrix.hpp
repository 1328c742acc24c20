#pragma once

#include "adicomp/arith.hpp"

#include <string>
#include <vector>

namespace adicomp {

/// Element of a free module A^n.
using FreeVec = std::vector<RingElem>;

FreeVec zero_vec(const RingSpec &ring, std::size_t n);
FreeVec unit_vec(const RingSpec &ring, std::size_t n, std::size_t i);
FreeVec add(const FreeVec &a, const FreeVec &b);
FreeVec sub(const FreeVec &a, const FreeVec &b);
FreeVec scale(const RingElem &c, const FreeVec &v);
bool is_zero(const FreeVec &v);
std::string format_vec(const FreeVec &v);
/// Coordinates as strings, the form used in verdict evidence.
std::vector<std::string> element_strings(const FreeVec &v);

/// Dense matrix over a ring; rows x cols, row-major.
class Matrix {
public:
  Matrix(RingSpec ring, std::size_t rows, std::size_t cols);

  static Matrix identity(const RingSpec &ring, std::size_t n);
  /// Matrix whose j-th column is cols[j] (each of length rows).
  static Matrix from_columns(const RingSpec &ring, std::size_t rows,
                             const std::vector<FreeVec> &cols);

  [[nodiscard]] const RingSpec &ring() const { return ring_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  RingElem &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const RingElem &operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  [[nodiscard]] FreeVec column(std::size_t j) const;
  [[nodiscard]] std::vector<FreeVec> columns() const;
  [[nodiscard]] FreeVec apply(const FreeVec &v) const;
  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] std::string str() const;

  friend Matrix operator*(const Matrix &a, const Matrix &b);
  friend Matrix operator+(const Matrix &a, const Matrix &b);
  friend bool operator==(const Matrix &a, const Matrix &b);

private:
  RingSpec ring_;
  std::size_t rows_, cols_;
  std::vector<RingElem> a_;
};

/// Lift an element of a quotient/power-series ring to its ambient polynomial
/// ring (normal-form representative). Identity on other kinds.
RingElem lift(const RingElem &e);
FreeVec lift(const FreeVec &v);
/// Push an ambient element back into ring.
RingElem push(const RingSpec &ring, const RingElem &e);
FreeVec push(const RingSpec &ring, const FreeVec &v);

} // namespace adicomp
