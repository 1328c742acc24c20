#pragma once

// Consistency checkers: each evaluates both sides of an equivalence through
// independent procedures and reports whether the verdicts agree.

#include "adicomp/derived.hpp"

#include <string>
#include <vector>

namespace adicomp {

enum class Consistency { Consistent, Inconsistent, Indecisive };

std::string_view to_string(Consistency c);
Consistency consistency_of(const Verdict &left, const Verdict &right);

struct NamedVerdict {
  std::string name;
  Verdict verdict;
};

struct EquivalenceReport {
  std::string task;
  Verdict left;
  Verdict right;
  Consistency consistent = Consistency::Indecisive;
  std::vector<NamedVerdict> sub_reports;
  std::string digest;
};

/// FNV-1a 64-bit of a canonical serialization, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);
std::string canonical_text(const FPModule &M);
std::string canonical_text(const BoundedComplex &C);
std::string canonical_text(const std::vector<RingElem> &a);

/// Z[t_1..t_n] -> A with t_i -> a_i, when it is surjective in the simple
/// form this package certifies: A is built over Z or F_p and every variable
/// of A equals some a_i plus a constant.
struct Transport {
  RingSpec source;   // Z[t_1..t_n]
  RingSpec quotient; // source / ker f
  RingSpec target;
  std::vector<RingElem> images;
  std::vector<RingElem> kernel; // generators, in source

  [[nodiscard]] RingElem pull(const RingElem &e) const;
  [[nodiscard]] FreeVec pull(const FreeVec &v) const;
  [[nodiscard]] FPModule pull(const FPModule &M) const;
  /// t_i in the quotient.
  [[nodiscard]] std::vector<RingElem> generators() const;

  // variable k of the target -> (index i, constant c) with x_k = a_i + c
  std::vector<std::pair<std::size_t, Integer>> lifters;
};

/// Throws NonSurjectiveReduction when surjectivity cannot be certified.
Transport surjective_transport(const RingMap &f);
Transport surjective_transport(const RingSpec &target, const std::vector<RingElem> &images);

EquivalenceReport check_theorem2(const BoundedComplex &M, const std::vector<RingElem> &a,
                                 DerivedBudget b = {});

EquivalenceReport check_theorem3(const FPModule &M,
                                 const std::vector<std::vector<RingElem>> &ideals,
                                 DerivedBudget b = {});
EquivalenceReport check_theorem3(const BoundedComplex &M,
                                 const std::vector<std::vector<RingElem>> &ideals,
                                 DerivedBudget b = {});

enum class StepTwo { Off, Auto, Require };

EquivalenceReport check_theorem4(const FPModule &M, const std::vector<RingElem> &a,
                                 DerivedBudget b = {}, StepTwo step2 = StepTwo::Auto);

/// Cohomological completeness for one generator from the comparison
/// M -> Hom(Tel_N, M) at consecutive stages, computed on the telescope.
Verdict telescope_comparison(const FPModule &M, const RingElem &a, DerivedBudget b = {});

EquivalenceReport check_lemma1(const FPModule &M, const RingElem &a, DerivedBudget b = {});

EquivalenceReport check_lemma5(const RingMap &f, std::size_t b_index, const FPModule &M,
                               DerivedBudget b = {});

struct Example1 {
  int support = 0;   // I
  int precision = 0; // N
  RingSpec ring;     // K[t]
  BoundedComplex P;  // K[t]^I --diag(t^i)--> K[t]^I in degrees -1, 0
  FPModule M;
  FreeVec m;         // sum t^i e_i
  /// For each j < N: (w_j, z_j) with m = t^j w_j + delta(z_j) in P^0.
  std::vector<std::pair<FreeVec, FreeVec>> containment;
  std::vector<NamedVerdict> report;

  [[nodiscard]] const Verdict &verdict(std::string_view name) const;
};

Example1 build_example1(int I, int N);

/// Complex-level check on the non-separated example (its H^0 is the module itself).
EquivalenceReport check_theorem2(const Example1 &ex, DerivedBudget b = {});

} // namespace adicomp
