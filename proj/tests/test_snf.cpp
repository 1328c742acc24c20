#include "adicomp/snf.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numeric>

using namespace adicomp;

namespace {

// Independent oracle: d_1 * ... * d_k equals the gcd of all k x k minors.
Integer det(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  Integer d = 1;
  // Fraction-free Bareiss elimination.
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return d * m[n - 1][n - 1];
}

Integer minor_gcd(const std::vector<std::vector<Integer>> &a, std::size_t k) {
  const std::size_t r = a.size(), c = a[0].size();
  Integer g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  // Enumerate k-subsets by bitmask (sizes are tiny).
  for (unsigned rm = 0; rm < (1u << r); ++rm) {
    if (std::popcount(rm) != static_cast<int>(k)) continue;
    for (unsigned cm = 0; cm < (1u << c); ++cm) {
      if (std::popcount(cm) != static_cast<int>(k)) continue;
      std::vector<std::vector<Integer>> sub;
      for (std::size_t i = 0; i < r; ++i) {
        if (!(rm >> i & 1)) continue;
        std::vector<Integer> row;
        for (std::size_t j = 0; j < c; ++j)
          if (cm >> j & 1) row.push_back(a[i][j]);
        sub.push_back(row);
      }
      Integer d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

Integer val(const RingElem &e) { return e.is_zero() ? Integer(0) : e.poly()[0].c.get_num(); }

} // namespace

TEST_CASE("SNF of diag(2, 3) is diag(1, 6)") {
  RingSpec Z = RingSpec::integers();
  Matrix A(Z, 2, 2);
  A(0, 0) = Z.from_int(2);
  A(1, 1) = Z.from_int(3);
  SmithForm s = smith_form(A);
  CHECK(s.diagonal[0] == Z.from_int(1));
  CHECK(s.diagonal[1] == Z.from_int(6));
  CHECK(s.U * A * s.V == smith_diagonal(s, 2, 2));
}

TEST_CASE("SNF against determinantal-divisor oracle (property)") {
  testgen::Rng r(2024);
  RingSpec Z = RingSpec::integers();
  for (int it = 0; it < 250; ++it) {
    std::size_t rows = static_cast<std::size_t>(r.range(1, 4));
    std::size_t cols = static_cast<std::size_t>(r.range(1, 4));
    Matrix A = testgen::random_matrix(r, Z, rows, cols, 0, 12);
    SmithForm s = smith_form(A);
    CHECK(s.U * A * s.V == smith_diagonal(s, rows, cols));
    CHECK(s.U * s.Uinv == Matrix::identity(Z, rows));
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = val(A(i, j));
    Integer prod = 1;
    for (std::size_t k = 0; k < s.diagonal.size(); ++k) {
      Integer d = val(s.diagonal[k]);
      CHECK(d >= 0);
      if (k + 1 < s.diagonal.size() && d != 0) {
        Integer n = val(s.diagonal[k + 1]);
        CHECK(n % d == 0);
      }
      prod *= d;
      CHECK(prod == minor_gcd(a, k + 1));
    }
  }
}

TEST_CASE("SNF over F_p[x] transforms") {
  testgen::Rng r(3);
  RingSpec R = RingSpec::polynomial(RingSpec::prime_field(3), {"x"});
  for (int it = 0; it < 40; ++it) {
    Matrix A = testgen::random_matrix(r, R, 3, 3, 2, 2);
    SmithForm s = smith_form(A);
    CHECK(s.U * A * s.V == smith_diagonal(s, 3, 3));
    CHECK(s.Uinv * s.U == Matrix::identity(R, 3));
    for (std::size_t k = 0; k + 1 < s.rank; ++k)
      CHECK(elem_divstep(s.diagonal[k + 1], s.diagonal[k]).remainder.is_zero());
  }
}
