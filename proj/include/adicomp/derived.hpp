#pragma once

// Telescope and Koszul complexes at finite stage, Ext^i(A_a, M), derived
// completion at a stage, and cohomological completeness.

#include "adicomp/adic.hpp"
#include "adicomp/complexes.hpp"

#include <optional>
#include <vector>

namespace adicomp {

struct DerivedBudget {
  int depth = 16;  // power chains
  int window = 8;  // tower windows
  int stages = 8;  // telescope stage N
  int stable = 2;  // consecutive decisive stages for a direct Holds
  /// Also compute the telescope stage cohomology in ext_localization.
  bool telescope_check = true;

  [[nodiscard]] AdicBudget adic() const { return {depth, window}; }
};

struct TelescopeStage {
  std::vector<RingElem> generators;
  int stage = 0;
  BoundedComplex complex;
  ComplexMap augmentation;   // complex -> A[0]
  BoundedComplex plus;       // omits delta_0 (x) ... (x) delta_0 in degree 0
  ComplexMap plus_inclusion; // plus -> complex
};

/// Single generator: degrees 0 and 1 with bases delta_0..delta_N,
/// d(delta_0) = delta_0, d(delta_i) = delta_{i-1} - a delta_i. Several
/// generators: tensor product of the single stages.
TelescopeStage telescope_stage(const std::vector<RingElem> &a, int N);
/// Inclusion of stage N into stage N2 >= N.
ComplexMap telescope_inclusion(const std::vector<RingElem> &a, int N, int N2);
/// The same inclusion restricted to the plus parts.
ComplexMap telescope_plus_inclusion(const std::vector<RingElem> &a, int N, int N2);

struct KoszulStage {
  std::vector<RingElem> generators;
  int exponent = 0;
  BoundedComplex complex;
};

KoszulStage koszul_stage(const std::vector<RingElem> &a, int j);
/// Stage map K(a^j) -> K(a^j2): identity in degree 0, multiplication by
/// a_i^(j2 - j) on each degree-1 factor.
ComplexMap koszul_transition(const std::vector<RingElem> &a, int j, int j2);

struct ExtStage {
  int stage = 0;
  FPModule value;
};

struct ExtResult {
  int degree = 0;
  /// H^degree of Hom(plus_N[1], M) at N = stages, stages + 1.
  std::vector<ExtStage> stages;
  /// Ext^0 as a module when the tower determines it; zero for Ext^1 when it
  /// vanishes.
  std::optional<FPModule> value;
  Verdict vanishing;
  /// Telescope stage cohomology matches the multiplication tower (M, .a).
  bool routes_agree = true;
};

ExtResult ext_localization(int i, const RingElem &a, const FPModule &M, DerivedBudget b = {});

/// Telescope-stage facts for one generator: H^0 of Hom(plus_N[1], M) is M,
/// H^1 vanishes, and restriction along stage inclusions is multiplication by a.
struct TelescopeCheck {
  std::vector<FPModule> h0, h1;
  bool h0_is_m = false;
  bool h1_zero = false;
  bool transition_is_a = false;
  [[nodiscard]] bool ok() const { return h0_is_m && h1_zero && transition_is_a; }
};

TelescopeCheck telescope_check(const RingElem &a, const FPModule &M, int N);

/// Cohomological completeness for a single generator through the Koszul
/// towers (0 :_M a^j) and M / a^j M read off Hom(K(a^j)[1], M).
Verdict koszul_route(const RingElem &a, const FPModule &M, DerivedBudget b = {});
/// The same through Ext^0 and Ext^1 of the telescope (Ext criterion).
Verdict telescope_route(const RingElem &a, const FPModule &M, DerivedBudget b = {});

struct DerivedCompletionStage {
  TelescopeStage telescope;
  BoundedComplex hom;     // Hom(Tel_N, C)
  ComplexMap comparison;  // C -> Hom(Tel_N, C), precomposition with u_N
  /// is_quasi_iso of the comparison at this finite stage.
  Verdict strict;
  /// Pro criterion: H^0 comparison is an isomorphism and the stage maps
  /// 2N -> N vanish on negative cohomology (computed on the Koszul model).
  Verdict criterion;
  /// Koszul-route verdicts per generator, for cross-checking.
  std::vector<Verdict> koszul;
};

DerivedCompletionStage derived_completion_stage(const BoundedComplex &C,
                                                const std::vector<RingElem> &a, int N,
                                                DerivedBudget b = {});
DerivedCompletionStage derived_completion_stage(const FPModule &M, const std::vector<RingElem> &a,
                                                int N, DerivedBudget b = {});

/// Stage criterion on the reduced Koszul model of a module.
Verdict stage_criterion(const FPModule &M, const std::vector<RingElem> &a, int N);

enum class CCRoute { Decomposed, DirectStage };

Verdict is_cohomologically_complete(const FPModule &M, const std::vector<RingElem> &a,
                                    DerivedBudget b = {}, CCRoute route = CCRoute::Decomposed);
/// Bounded complexes: every cohomology module must be cohomologically complete.
Verdict is_cohomologically_complete(const BoundedComplex &C, const std::vector<RingElem> &a,
                                    DerivedBudget b = {}, CCRoute route = CCRoute::Decomposed);

} // namespace adicomp
