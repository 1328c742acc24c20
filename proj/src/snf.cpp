#include "adicomp/snf.hpp"

#include "adicomp/error.hpp"

namespace adicomp {

namespace {

struct Work {
  Matrix D, U, Uinv, V;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
    for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    for (std::size_t i = 0; i < Uinv.rows(); ++i) std::swap(Uinv(i, a), Uinv(i, b));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
    for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
  }
  // row_dst += q * row_src
  void add_row(std::size_t dst, std::size_t src, const RingElem &q) {
    for (std::size_t j = 0; j < D.cols(); ++j)
      if (!D(src, j).is_zero()) D(dst, j) = D(dst, j) + q * D(src, j);
    for (std::size_t j = 0; j < U.cols(); ++j)
      if (!U(src, j).is_zero()) U(dst, j) = U(dst, j) + q * U(src, j);
    for (std::size_t i = 0; i < Uinv.rows(); ++i)
      if (!Uinv(i, dst).is_zero()) Uinv(i, src) = Uinv(i, src) - q * Uinv(i, dst);
  }
  // col_dst += q * col_src
  void add_col(std::size_t dst, std::size_t src, const RingElem &q) {
    for (std::size_t i = 0; i < D.rows(); ++i)
      if (!D(i, src).is_zero()) D(i, dst) = D(i, dst) + q * D(i, src);
    for (std::size_t i = 0; i < V.rows(); ++i)
      if (!V(i, src).is_zero()) V(i, dst) = V(i, dst) + q * V(i, src);
  }
  void scale_row(std::size_t r, const RingElem &u, const RingElem &uinv) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(r, j) = u * D(r, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(r, j) = u * U(r, j);
    for (std::size_t i = 0; i < Uinv.rows(); ++i) Uinv(i, r) = uinv * Uinv(i, r);
  }
};

bool divides(const RingElem &b, const RingElem &a) {
  if (b.is_zero()) return a.is_zero();
  return elem_divstep(a, b).remainder.is_zero();
}

} // namespace

SmithForm smith_form(const Matrix &A) {
  const RingSpec &ring = A.ring();
  if (!ring.euclidean())
    throw Error(ErrorCode::UnsupportedRing, "Smith form over " + ring.description());
  const std::size_t m = A.rows(), n = A.cols();
  Work w{A, Matrix::identity(ring, m), Matrix::identity(ring, m),
         Matrix::identity(ring, n)};
  Matrix &D = w.D;
  const std::size_t k = std::min(m, n);
  std::size_t t = 0;
  for (; t < k; ++t) {
    for (;;) {
      // Pivot: nonzero entry of least Euclidean size in the trailing block.
      std::size_t pi = m, pj = n;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (D(i, j).is_zero()) continue;
          Integer s = euclidean_size(D(i, j));
          if (pi == m || s < best) {
            best = s;
            pi = i;
            pj = j;
          }
        }
      if (pi == m) goto done;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t).is_zero()) continue;
        DivStep ds = elem_divstep(D(i, t), D(t, t));
        w.add_row(i, t, -ds.quotient);
        if (!ds.remainder.is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j).is_zero()) continue;
        DivStep ds = elem_divstep(D(t, j), D(t, t));
        w.add_col(j, t, -ds.quotient);
        if (!ds.remainder.is_zero()) clean = false;
      }
      if (!clean) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n && !fixed; ++j)
          if (!divides(D(t, t), D(i, j))) {
            w.add_row(t, i, ring.one());
            fixed = true;
          }
      if (!fixed) break;
    }
    RingElem u = canonical_unit(D(t, t));
    if (!u.is_one()) {
      RingElem uinv = ring.from_rational(ring.dom().inverse(u.poly()[0].c));
      w.scale_row(t, u, uinv);
    }
  }
done:
  SmithForm s{{}, t, std::move(w.U), std::move(w.Uinv), std::move(w.V)};
  for (std::size_t i = 0; i < k; ++i) s.diagonal.push_back(D(i, i));
  return s;
}

Matrix smith_diagonal(const SmithForm &s, std::size_t rows, std::size_t cols) {
  Matrix D(s.U.ring(), rows, cols);
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) D(i, i) = s.diagonal[i];
  return D;
}

} // namespace adicomp
