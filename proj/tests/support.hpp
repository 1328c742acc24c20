#pragma once

// Hand-rolled generators shared by the unit tests.

#include "adicomp/arith.hpp"
#include "adicomp/matrix.hpp"

#include <random>

namespace testgen {

using namespace adicomp;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  // Uniform in [lo, hi].
  long range(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(eng() % span);
  }
  bool coin() { return (eng() & 1) != 0; }
};

inline RingElem random_elem(Rng &r, const RingSpec &ring, int max_deg = 2,
                            int terms = 3, long coeff = 5) {
  RingElem e = ring.zero();
  const std::size_t n = ring.nvars();
  int count = static_cast<int>(r.range(0, terms));
  for (int k = 0; k < count; ++k) {
    RingElem t = ring.from_int(r.range(-coeff, coeff));
    int d = static_cast<int>(r.range(0, max_deg));
    for (int s = 0; s < d && n > 0; ++s)
      t = t * ring.variable(static_cast<std::size_t>(r.range(0, static_cast<long>(n) - 1)));
    e = e + t;
  }
  return e;
}

inline FreeVec random_vec(Rng &r, const RingSpec &ring, std::size_t n,
                          int max_deg = 2, long coeff = 5) {
  FreeVec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_elem(r, ring, max_deg, 3, coeff));
  return v;
}

inline Matrix random_matrix(Rng &r, const RingSpec &ring, std::size_t rows,
                            std::size_t cols, int max_deg = 1, long coeff = 9) {
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_elem(r, ring, max_deg, 2, coeff);
  return m;
}

} // namespace testgen

#include "adicomp/complexes.hpp"

namespace testgen {

/// Random free complex over a field with the given ranks starting at lo;
/// each differential is built from the left null space of the previous one.
inline BoundedComplex random_free_complex(Rng &r, const RingSpec &F, int lo,
                                          const std::vector<std::size_t> &ranks,
                                          int max_deg = 0, long coeff = 5) {
  std::vector<FPModule> entries;
  for (auto n : ranks) entries.push_back(FPModule::free(F, n));
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k + 1 < ranks.size(); ++k) {
    const std::size_t rows = ranks[k + 1], cols = ranks[k];
    if (k == 0) {
      diffs.push_back(random_matrix(r, F, rows, cols, max_deg, coeff));
      continue;
    }
    // Rows of d must annihilate the image of the previous differential.
    Matrix prevT = diffs.back().transpose();
    ModuleHom h(FPModule::free(F, prevT.cols()), FPModule::free(F, prevT.rows()), prevT, false);
    std::vector<FreeVec> null = kernel_hom(h).inclusion.matrix().columns();
    Matrix d(F, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (const auto &w : null) {
        RingElem c = random_elem(r, F, max_deg, 1, coeff);
        for (std::size_t j = 0; j < cols; ++j) d(i, j) = d(i, j) + c * w[j];
      }
    diffs.push_back(std::move(d));
  }
  return BoundedComplex(F, lo, std::move(entries), std::move(diffs));
}

} // namespace testgen
