#pragma once

// Adic towers, separatedness and completeness, and truncated models of
// decaying function modules.

#include "adicomp/modules.hpp"
#include "adicomp/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adicomp {

struct AdicBudget {
  int depth = 16;
  int window = 8;
};

enum class TowerKind { Quotient, Multiplication, Hom, Custom };

std::string_view to_string(TowerKind k);

/// Inverse system: transitions[k] : stage(first + k + 1) -> stage(first + k).
struct Tower {
  TowerKind kind = TowerKind::Custom;
  int first = 0;
  std::vector<FPModule> stages;
  std::vector<ModuleHom> transitions;
  /// Index from which every transition is an isomorphism.
  std::optional<int> stabilization;
  std::string certificate;
  /// The scalar of a multiplication tower.
  std::optional<RingElem> multiplier;

  [[nodiscard]] const FPModule &stage(int k) const;
  [[nodiscard]] int last() const { return first + static_cast<int>(stages.size()) - 1; }
};

/// Stages M / a^k M for k = 1..depth with the canonical surjections.
Tower completion_tower(const FPModule &M, const std::vector<RingElem> &a, int depth,
                       int budget = 16);
/// Stages M, transitions multiplication by a, for k = 0..depth.
Tower multiplication_tower(const FPModule &M, const RingElem &a, int depth);

struct LimReport {
  std::optional<FPModule> lim; // set when the tower stabilizes
  std::string description;
  Verdict lim1;                // vanishing of lim^1
};

LimReport lim_tower(const Tower &T, int window, int budget = 16);

/// Facts about the principal chain a^j M established with exact certificates.
struct PrincipalFacts {
  bool nilpotent = false;             // M[1/a] = 0
  std::optional<int> stabilized_at;   // within the depth budget
  bool stabilized_zero = false;
  FreeVec stable_witness;             // nonzero element of the stable value
  bool never_stabilizes = false;      // proven
  std::string never_reason;
  std::optional<bool> divisible_zero; // lim(M, .a) = 0, when decided
  FreeVec divisible_witness;
  std::string divisible_reason;
  int depth_used = 0;
};

PrincipalFacts principal_facts(const FPModule &M, const RingElem &a, AdicBudget b = {});

/// Ext^0(A_a, M) = lim(M, .a) and Ext^1(A_a, M) = lim^1(M, .a) vanishing, from
/// the multiplication tower.
Verdict ext0_vanishing(const PrincipalFacts &f, AdicBudget b = {});
Verdict ext1_vanishing(const PrincipalFacts &f, AdicBudget b = {});

/// Graded certificate: ring graded, every nonzero a_i homogeneous of positive
/// degree, and M admits homogeneous relations.
bool graded_certificate(const FPModule &M, const std::vector<RingElem> &a);

Verdict is_separated(const FPModule &M, const std::vector<RingElem> &a, AdicBudget b = {});

struct CompletenessOptions {
  /// Allow refutation through separatedness plus a failing Ext^1 vanishing.
  bool schenzel_route = true;
};

Verdict is_complete(const FPModule &M, const std::vector<RingElem> &a, AdicBudget b = {},
                    CompletenessOptions opts = {});

/// Whether every a_i acts nilpotently on M (exact).
bool ideal_nilpotent_on(const FPModule &M, const std::vector<RingElem> &a);

/// Truncation of a decaying function N -> K[[t]] to support I and precision N.
struct FdecApprox {
  RingSpec ring; // K[t]/(t^N)
  std::vector<RingElem> values;
  std::vector<int> decay; // monotone, values[i] in (t^decay[i])

  [[nodiscard]] int support_bound() const { return static_cast<int>(values.size()); }
  [[nodiscard]] int precision() const { return ring.precision(); }
};

/// t-adic valuation in a power-series model; the precision for zero.
int t_valuation(const RingElem &e);

FdecApprox make_fdec(const RingSpec &ring, std::vector<RingElem> values);

struct FiniteSupport {
  std::vector<int> support;
  std::vector<RingElem> values;
};

/// Finitely supported representative modulo t^k. Throws PrecisionExceeded
/// when k exceeds the precision.
FiniteSupport fdec_reduce(const FdecApprox &e, int k);

} // namespace adicomp
