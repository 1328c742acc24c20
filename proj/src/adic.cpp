#include "adicomp/adic.hpp"

#include "adicomp/error.hpp"

#include <algorithm>

namespace adicomp {

namespace {

void check_parents(const FPModule &M, const std::vector<RingElem> &a) {
  for (const auto &ai : a)
    if (!(ai.parent() == M.ring()))
      throw Error(ErrorCode::ParentMismatch, "ideal generator " + ai.str() + " over " +
                                                 ai.parent().description() + ", module over " +
                                                 M.ring().description());
}

RingElem euclid_gcd(RingElem x, RingElem y) {
  while (!y.is_zero()) {
    DivStep q = elem_divstep(x, y);
    x = y;
    y = q.remainder;
  }
  if (x.is_zero()) return x;
  return canonical_unit(x) * x;
}

// d = d' * d'' with d' | g^infinity and gcd(d'', g) = 1.
std::pair<RingElem, RingElem> split_by(const RingElem &d, const RingElem &g) {
  RingElem part = d.parent().one();
  RingElem rest = d;
  for (;;) {
    RingElem c = euclid_gcd(rest, g);
    if (c.is_zero() || c.is_unit()) break;
    rest = elem_divstep(rest, c).quotient;
    part = part * c;
  }
  return {part, rest};
}

std::optional<FreeVec> first_nonzero(const FPModule &M, const std::vector<FreeVec> &gens) {
  for (const auto &g : gens)
    if (!M.is_zero_elem(g)) return g;
  return std::nullopt;
}

struct Divisible {
  bool zero = true;
  FreeVec witness;
  std::string reason;
};

// Largest a-divisible submodule over a ring that is Euclidean after lifting.
Divisible divisible_part_pid(const FPModule &M, const RingElem &g) {
  EuclideanStructure es = euclidean_structure(M);
  Divisible out;
  if (g.is_unit()) {
    out.zero = M.is_zero();
    if (!out.zero) {
      out.witness = es.free_rank ? es.free_generators[0] : es.torsion_generators[0];
      out.reason = "the generator is a unit";
    }
    return out;
  }
  for (std::size_t i = 0; i < es.torsion.size(); ++i) {
    auto [part, rest] = split_by(es.torsion[i], g);
    if (rest.is_unit()) continue;
    out.zero = false;
    out.witness = scale(push(M.ring(), part), es.torsion_generators[i]);
    out.reason = "invariant factor " + es.torsion[i].str() + " has the factor " + rest.str() +
                 " coprime to " + g.str();
    return out;
  }
  out.reason = "every invariant factor divides a power of " + g.str();
  return out;
}

RingElem ideal_gcd(const RingSpec &amb, const std::vector<RingElem> &a) {
  RingElem g = amb.zero();
  for (const auto &ai : a) g = euclid_gcd(g, lift(ai));
  return g;
}

StdBasis span_with_relations(const FPModule &M, const std::vector<FreeVec> &gens) {
  std::vector<FreeVec> all = M.relations();
  all.insert(all.end(), gens.begin(), gens.end());
  return std_basis(all, M.ring(), M.rank(), StdBasisOptions{false});
}

} // namespace

std::string_view to_string(TowerKind k) {
  switch (k) {
  case TowerKind::Quotient: return "quotient";
  case TowerKind::Multiplication: return "multiplication";
  case TowerKind::Hom: return "hom";
  case TowerKind::Custom: return "custom";
  }
  return "?";
}

const FPModule &Tower::stage(int k) const {
  if (k < first || k > last())
    throw Error(ErrorCode::BudgetExceeded, "stage " + std::to_string(k) + " not materialized");
  return stages[static_cast<std::size_t>(k - first)];
}

Tower completion_tower(const FPModule &M, const std::vector<RingElem> &a, int depth, int budget) {
  check_parents(M, a);
  if (depth > budget)
    throw Error(ErrorCode::BudgetExceeded,
                "depth " + std::to_string(depth) + " exceeds budget " + std::to_string(budget));
  if (depth < 1) throw Error(ErrorCode::BudgetExceeded, "depth must be positive");
  const RingSpec &ring = M.ring();
  PowerChain pc = power_chain(M, a, depth);
  Tower T;
  T.kind = TowerKind::Quotient;
  T.first = 1;
  for (int k = 1; k <= depth; ++k)
    T.stages.emplace_back(ring, M.rank(), pc.level(static_cast<std::size_t>(k)).generators);
  for (int k = 1; k < depth; ++k)
    T.transitions.emplace_back(T.stages[static_cast<std::size_t>(k)],
                               T.stages[static_cast<std::size_t>(k - 1)],
                               Matrix::identity(ring, M.rank()), false);
  if (pc.stabilized_at) {
    T.stabilization = std::max(1, *pc.stabilized_at);
    T.certificate = "a^k M = a^(k+1) M at k = " + std::to_string(*pc.stabilized_at);
  }
  return T;
}

Tower multiplication_tower(const FPModule &M, const RingElem &a, int depth) {
  check_parents(M, {a});
  Tower T;
  T.kind = TowerKind::Multiplication;
  T.multiplier = a;
  for (int k = 0; k <= depth; ++k) T.stages.push_back(M);
  for (int k = 0; k < depth; ++k) T.transitions.push_back(ModuleHom::scalar(M, a));
  return T;
}

LimReport lim_tower(const Tower &T, int window, int budget) {
  if (window > budget)
    throw Error(ErrorCode::BudgetExceeded,
                "window " + std::to_string(window) + " exceeds budget " + std::to_string(budget));
  Budget used{0, window, 0};
  if (T.stabilization) {
    const int s = *T.stabilization;
    return {T.stage(s), "limit is stage " + std::to_string(s),
            Verdict::holds({"stabilization",
                            "transitions are isomorphisms from stage " + std::to_string(s),
                            {}, {}, s},
                           used)};
  }
  if (T.kind == TowerKind::Quotient)
    return {std::nullopt, "no stabilization within the tower; the limit is not finitely presented",
            Verdict::holds({"mittag-leffler", "transitions are surjective", {}, {}, {}}, used)};
  if (T.kind == TowerKind::Multiplication && T.multiplier) {
    const FPModule &M = T.stage(T.first);
    PrincipalFacts f = principal_facts(M, *T.multiplier, AdicBudget{budget, window});
    std::optional<FPModule> lim;
    std::string desc = "limit not determined within the budget";
    if (f.stabilized_at) {
      PowerAct pa = ideal_power_act({*T.multiplier}, *f.stabilized_at, M, budget);
      lim = pa.power.module;
      desc = "limit is the stable value a^j M, j = " + std::to_string(*f.stabilized_at);
    } else if (f.divisible_zero && *f.divisible_zero) {
      lim = FPModule::zero(M.ring());
      desc = "limit is zero: " + f.divisible_reason;
    }
    Verdict v = ext1_vanishing(f, AdicBudget{budget, window});
    if (v.decisive()) return {lim, desc, v};
  }

  // Images of composites stage(k + j) -> stage(k) for j = 0..window.
  bool all_stable = true;
  std::optional<int> failing;
  std::optional<FPModule> lim;
  const int top = T.last() - window;
  for (int k = T.first; k <= top; ++k) {
    const FPModule &S = T.stage(k);
    Matrix comp = Matrix::identity(S.ring(), S.rank());
    std::vector<StdBasis> images{span_with_relations(S, comp.columns())};
    std::optional<int> stable;
    for (int j = 1; j <= window; ++j) {
      comp = comp * T.transitions[static_cast<std::size_t>(k + j - 1 - T.first)].matrix();
      images.push_back(span_with_relations(S, comp.columns()));
      if (same_span(images[images.size() - 2], images.back())) {
        stable = j - 1;
        break;
      }
    }
    if (!stable) {
      all_stable = false;
      failing = k;
      break;
    }
    if (k == T.first && T.kind == TowerKind::Multiplication)
      lim = submodule(S, images[static_cast<std::size_t>(*stable)].generators).module;
  }
  if (top < T.first)
    return {std::nullopt, "tower shorter than the window",
            Verdict::unknown("tower shorter than the window", used)};
  if (all_stable)
    return {lim, lim ? "limit is the stable image at the first stage" : "images stabilize",
            Verdict::holds({"mittag-leffler",
                            "images of deep transitions stabilize at every materialized stage",
                            {}, {}, {}},
                           used)};
  return {std::nullopt, "images strictly decrease through the window",
          Verdict::fails({"mittag-leffler",
                          "images strictly decrease through the window at stage " +
                              std::to_string(*failing) +
                              "; a countable tower failing Mittag-Leffler has nonzero lim^1",
                          {}, {}, failing},
                         used)};
}

PrincipalFacts principal_facts(const FPModule &M, const RingElem &a, AdicBudget b) {
  check_parents(M, {a});
  PrincipalFacts f;
  f.nilpotent = localization_vanishes(M, a);
  PowerChain pc = power_chain(M, {a}, b.depth);
  f.depth_used = static_cast<int>(pc.levels.size()) - 1;
  if (pc.stabilized_at) {
    f.stabilized_at = pc.stabilized_at;
    auto w = first_nonzero(M, pc.level(static_cast<std::size_t>(*pc.stabilized_at)).generators);
    f.stabilized_zero = !w;
    if (w) f.stable_witness = *w;
  }
  const RingSpec amb = M.ring().ambient();
  if (amb.euclidean()) {
    RingElem g = lift(a);
    if (!g.is_zero()) {
      g = canonical_unit(g) * g;
      Divisible d = divisible_part_pid(M, g);
      f.divisible_zero = d.zero;
      f.divisible_witness = d.witness;
      f.divisible_reason = d.reason;
      if (!g.is_unit()) {
        EuclideanStructure es = euclidean_structure(M);
        if (es.free_rank > 0) {
          f.never_stabilizes = true;
          f.never_reason = "free summand of rank " + std::to_string(es.free_rank) + " and " +
                           g.str() + " is neither zero nor a unit";
        }
      }
    }
  } else if (graded_certificate(M, {a})) {
    f.divisible_zero = true;
    f.divisible_reason = "graded module, the intersection of a^j M vanishes by degree";
    if (!f.nilpotent) {
      f.never_stabilizes = true;
      f.never_reason = "graded and a is not nilpotent: a stable value would be a-divisible, "
                       "hence zero, forcing nilpotence";
    }
  }
  if (f.stabilized_at) {
    f.divisible_zero = f.stabilized_zero;
    f.divisible_witness = f.stable_witness;
    f.never_stabilizes = false;
  }
  if (f.nilpotent) {
    f.divisible_zero = true;
    f.never_stabilizes = false;
  }
  return f;
}

Verdict ext0_vanishing(const PrincipalFacts &f, AdicBudget b) {
  Budget used{f.depth_used, b.window, 0};
  if (f.nilpotent)
    return Verdict::holds({"nilpotent", "a acts nilpotently, so the limit vanishes", {}, {}, {}},
                          used);
  if (f.stabilized_at) {
    if (f.stabilized_zero)
      return Verdict::holds({"stabilization", "a^j M = 0 from the stable index", {}, {},
                             f.stabilized_at},
                            used);
    return Verdict::fails({"divisible",
                           "a^j M stabilizes to a nonzero a-divisible submodule",
                           element_strings(f.stable_witness), {}, f.stabilized_at},
                          used);
  }
  if (f.divisible_zero) {
    if (*f.divisible_zero)
      return Verdict::holds({"intersection", f.divisible_reason, {}, {}, {}}, used);
    return Verdict::fails({"divisible", f.divisible_reason,
                           element_strings(f.divisible_witness), {}, {}},
                          used);
  }
  return Verdict::unknown("a^j M did not stabilize within depth " + std::to_string(f.depth_used),
                          used);
}

Verdict ext1_vanishing(const PrincipalFacts &f, AdicBudget b) {
  Budget used{f.depth_used, b.window, 0};
  if (f.nilpotent)
    return Verdict::holds({"nilpotent", "a acts nilpotently, images eventually vanish", {}, {}, {}},
                          used);
  if (f.stabilized_at)
    return Verdict::holds({"mittag-leffler", "images a^j M stabilize", {}, {}, f.stabilized_at},
                          used);
  if (f.never_stabilizes)
    return Verdict::fails({"mittag-leffler",
                           "images a^j M never stabilize (" + f.never_reason +
                               "); a countable tower failing Mittag-Leffler has nonzero lim^1",
                           {}, {}, {}},
                          used);
  return Verdict::unknown("images of (M, .a) still decreasing after depth " +
                              std::to_string(f.depth_used),
                          used);
}

bool graded_certificate(const FPModule &M, const std::vector<RingElem> &a) {
  if (!M.ring().graded()) return false;
  for (const auto &ai : a) {
    if (ai.is_zero()) continue;
    if (!ai.is_homogeneous() || ai.degree() <= 0) return false;
  }
  return generator_degrees(M).has_value();
}

Verdict is_separated(const FPModule &M, const std::vector<RingElem> &a, AdicBudget b) {
  check_parents(M, a);
  Budget used{0, 0, 0};
  if (M.is_zero()) return Verdict::holds({"zero", "M = 0", {}, {}, {}}, used);
  if (graded_certificate(M, a))
    return Verdict::holds({"graded",
                           "generators homogeneous of positive degree on a graded module",
                           {}, {}, {}},
                          used);
  const RingSpec amb = M.ring().ambient();
  if (amb.euclidean()) {
    RingElem g = ideal_gcd(amb, a);
    if (g.is_zero()) return Verdict::holds({"valuation", "the ideal is zero", {}, {}, {}}, used);
    Divisible d = divisible_part_pid(M, g);
    if (d.zero) return Verdict::holds({"valuation", d.reason, {}, {}, {}}, used);
    return Verdict::fails({"valuation", d.reason + "; the element lies in every a^k M",
                           element_strings(d.witness), {}, {}},
                          used);
  }
  PowerChain pc = power_chain(M, a, b.depth);
  used.depth = static_cast<int>(pc.levels.size()) - 1;
  if (pc.stabilized_at) {
    const int s = *pc.stabilized_at;
    auto w = first_nonzero(M, pc.level(static_cast<std::size_t>(s)).generators);
    if (!w)
      return Verdict::holds({"stabilization", "a^k M = 0 from k = " + std::to_string(s), {}, {},
                             s},
                            used);
    return Verdict::fails({"stabilization",
                           "a^k M stabilizes at k = " + std::to_string(s) +
                               " to a nonzero submodule",
                           element_strings(*w), {}, s},
                          used);
  }
  return Verdict::unknown("no certificate within depth " + std::to_string(used.depth), used);
}

bool ideal_nilpotent_on(const FPModule &M, const std::vector<RingElem> &a) {
  check_parents(M, a);
  return std::all_of(a.begin(), a.end(),
                     [&](const RingElem &ai) { return localization_vanishes(M, ai); });
}

Verdict is_complete(const FPModule &M, const std::vector<RingElem> &a, AdicBudget b,
                    CompletenessOptions opts) {
  check_parents(M, a);
  Budget used{0, 0, 0};
  if (M.is_zero()) return Verdict::holds({"zero", "M = 0", {}, {}, {}}, used);
  PowerChain pc = power_chain(M, a, b.depth);
  used.depth = static_cast<int>(pc.levels.size()) - 1;
  if (pc.stabilized_at) {
    const int s = *pc.stabilized_at;
    auto w = first_nonzero(M, pc.level(static_cast<std::size_t>(s)).generators);
    if (!w)
      return Verdict::holds({"nilpotent", "a^k M = 0 at k = " + std::to_string(s), {}, {}, s},
                            used);
    return Verdict::fails({"stable-kernel",
                           "a^k M stabilizes at k = " + std::to_string(s) +
                               " to a nonzero submodule in the kernel of M -> completion",
                           element_strings(*w), {}, s},
                          used);
  }
  if (ideal_nilpotent_on(M, a))
    return Verdict::holds({"nilpotent",
                           "every generator acts nilpotently; a^k M = 0 beyond the depth budget",
                           {}, {}, {}},
                          used);
  if (opts.schenzel_route && is_separated(M, a, b).holds()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      Verdict e1 = ext1_vanishing(principal_facts(M, a[i], b), b);
      if (e1.fails())
        return Verdict::fails({"schenzel",
                               "separated, but Ext^1(A[1/" + a[i].str() + "], M) != 0",
                               {}, {}, {}},
                              used);
    }
  }
  for (const auto &ai : a)
    if (!localization_vanishes(M, ai))
      return Verdict::fails({"countability",
                             ai.str() + " is not nilpotent on M; the completion of a countable "
                                        "module along a non-nilpotent ideal is uncountable or "
                                        "has a kernel",
                             {}, {}, {}},
                            used);
  return Verdict::unknown("no certificate", used);
}

int t_valuation(const RingElem &e) {
  const RingSpec &ring = e.parent();
  if (ring.kind() != RingKind::PowerSeries)
    throw Error(ErrorCode::UnsupportedRing, "valuation needs a power-series model");
  if (e.is_zero()) return ring.precision();
  std::uint32_t v = ring.precision();
  for (const auto &t : lift(e).poly()) v = std::min(v, t.m.deg);
  return static_cast<int>(v);
}

FdecApprox make_fdec(const RingSpec &ring, std::vector<RingElem> values) {
  if (ring.kind() != RingKind::PowerSeries)
    throw Error(ErrorCode::UnsupportedRing, "decaying functions need a power-series model");
  for (const auto &v : values)
    if (!(v.parent() == ring)) throw Error(ErrorCode::ParentMismatch, "value over wrong ring");
  std::vector<int> decay(values.size());
  int running = ring.precision();
  for (std::size_t i = values.size(); i-- > 0;) {
    running = std::min(running, t_valuation(values[i]));
    decay[i] = running;
  }
  return {ring, std::move(values), std::move(decay)};
}

FiniteSupport fdec_reduce(const FdecApprox &e, int k) {
  if (k < 0 || k > e.precision())
    throw Error(ErrorCode::PrecisionExceeded,
                "reduction modulo t^" + std::to_string(k) + " at precision " +
                    std::to_string(e.precision()));
  FiniteSupport out;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    Poly kept;
    for (const auto &t : lift(e.values[i]).poly())
      if (static_cast<int>(t.m.deg) < k) kept.push_back(t);
    if (kept.empty()) continue;
    out.support.push_back(static_cast<int>(i));
    out.values.push_back(e.ring.make(kept));
  }
  return out;
}

} // namespace adicomp
