#pragma once

// Bounded cochain complexes of finitely presented modules.
// Conventions: d has degree +1; Hom differential (d f) = d o f - (-1)^n f o d;
// tensor differential d(x (x) y) = dx (x) y + (-1)^p x (x) dy; C[k]^j = C^{j+k}
// with differential (-1)^k d.

#include "adicomp/modules.hpp"
#include "adicomp/verdict.hpp"

#include <map>
#include <optional>
#include <vector>

namespace adicomp {

class BoundedComplex {
public:
  /// entries[k] sits in degree lo + k; diffs[k] : entries[k] -> entries[k+1].
  /// Throws NotAComplex when d o d != 0 or shapes disagree.
  BoundedComplex(RingSpec ring, int lo, std::vector<FPModule> entries,
                 std::vector<Matrix> diffs, bool check = true);

  static BoundedComplex zero(const RingSpec &ring);
  static BoundedComplex single(const FPModule &M, int degree);
  /// Two-term complex M --f--> N in degrees (degree, degree + 1).
  static BoundedComplex two_term(const ModuleHom &f, int degree);

  [[nodiscard]] const RingSpec &ring() const { return ring_; }
  [[nodiscard]] int lo() const { return lo_; }
  [[nodiscard]] int hi() const { return lo_ + static_cast<int>(entries_.size()) - 1; }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] const FPModule &entry(int j) const;
  /// d^j : entry(j) -> entry(j + 1), zero outside the window.
  [[nodiscard]] ModuleHom differential(int j) const;
  [[nodiscard]] Matrix diff_matrix(int j) const;
  [[nodiscard]] bool is_free() const;
  [[nodiscard]] std::string str() const;

private:
  RingSpec ring_;
  int lo_;
  std::vector<FPModule> entries_;
  std::vector<Matrix> diffs_;
  FPModule zero_;
};

/// Cohomology at degree j presented on cycle generators.
struct CohomologyData {
  FPModule module;
  std::vector<FreeVec> cycles; // generators in entry(j) coordinates
};

CohomologyData cohomology_data(const BoundedComplex &C, int j);
FPModule cohomology(const BoundedComplex &C, int j);

/// inf/sup of nonzero cohomology; both empty for an exact complex.
struct CohomologyRange {
  std::optional<int> inf, sup;
  /// sup - inf, or empty for minus infinity.
  [[nodiscard]] std::optional<int> amplitude() const;
};

CohomologyRange cohomology_range(const BoundedComplex &C);

class ComplexMap {
public:
  /// components[j] : source.entry(j) -> target.entry(j); missing degrees are
  /// zero. Throws IllDefined unless the map commutes with differentials.
  ComplexMap(BoundedComplex source, BoundedComplex target,
             std::map<int, Matrix> components, bool check = true);

  static ComplexMap identity(const BoundedComplex &C);

  [[nodiscard]] const BoundedComplex &source() const { return source_; }
  [[nodiscard]] const BoundedComplex &target() const { return target_; }
  [[nodiscard]] ModuleHom component(int j) const;
  [[nodiscard]] Matrix component_matrix(int j) const;

private:
  BoundedComplex source_;
  BoundedComplex target_;
  std::map<int, Matrix> comps_;
};

ModuleHom induced_map(const ComplexMap &f, int j);

/// Holds iff every induced cohomology map in the combined window is an
/// isomorphism; Fails with the first offending degree.
Verdict is_quasi_iso(const ComplexMap &f);

/// Coefficients c with v = sum c_i gens_i modulo M's relations, or empty
/// when v is not in the span.
std::optional<std::vector<RingElem>> express(const FreeVec &v,
                                             const std::vector<FreeVec> &gens,
                                             const FPModule &M);

struct Truncation {
  BoundedComplex lower;  // tau^{<= j-1}
  BoundedComplex upper;  // tau^{>= j}
  ComplexMap inclusion;  // lower -> C
  ComplexMap projection; // C -> upper
};

Truncation smart_truncate(const BoundedComplex &C, int j);

/// Hom complex out of a finite free complex F.
BoundedComplex hom_complex(const BoundedComplex &F, const BoundedComplex &C);
BoundedComplex hom_complex(const BoundedComplex &F, const FPModule &M);
/// Hom(u, 1_C) : Hom(G, C) -> Hom(F, C) for a degree-0 chain map u : F -> G of
/// free complexes.
ComplexMap hom_precompose(const ComplexMap &u, const BoundedComplex &C);

BoundedComplex tensor_complex(const BoundedComplex &F, const BoundedComplex &G);

/// f (x) g for degree-0 maps of free complexes, matching tensor_complex's
/// block layout.
ComplexMap tensor_map(const ComplexMap &f, const ComplexMap &g);

BoundedComplex shift(const BoundedComplex &C, int k);
ComplexMap shift_map(const ComplexMap &f, int k);
BoundedComplex cone(const ComplexMap &f);

} // namespace adicomp
