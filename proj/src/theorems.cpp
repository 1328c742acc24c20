#include "adicomp/theorems.hpp"

#include "adicomp/error.hpp"

#include <cstdint>
#include <cstdio>
#include <functional>

namespace adicomp {

std::string_view to_string(Consistency c) {
  switch (c) {
  case Consistency::Consistent: return "Consistent";
  case Consistency::Inconsistent: return "Inconsistent";
  case Consistency::Indecisive: return "Indecisive";
  }
  return "Indecisive";
}

Consistency consistency_of(const Verdict &left, const Verdict &right) {
  if (!left.decisive() || !right.decisive()) return Consistency::Indecisive;
  return left.status == right.status ? Consistency::Consistent : Consistency::Inconsistent;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string canonical_text(const FPModule &M) { return M.str(); }

std::string canonical_text(const BoundedComplex &C) {
  return C.ring().description() + " " + C.str();
}

std::string canonical_text(const std::vector<RingElem> &a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].str();
  return s + ")";
}

// Transport

namespace {

// x_k = a_i + c, read off the lifted image.
std::optional<Integer> variable_offset(const RingElem &image, std::size_t k) {
  const RingElem lifted = lift(image);
  const Poly &p = lifted.poly();
  std::optional<Integer> c = Integer(0);
  bool seen = false;
  for (const auto &t : p) {
    if (t.m.is_one()) {
      c = t.c.get_num();
      continue;
    }
    if (t.m.deg != 1 || t.m.e[k] != 1 || t.c != 1) return std::nullopt;
    seen = true;
  }
  if (!seen) return std::nullopt;
  return c;
}

// Target ambient element -> source element via x_k -> t_i - c.
RingElem pull_to_source(const Transport &T, const RingElem &ambient_elem) {
  const RingSpec &S = T.source;
  RingElem acc = S.zero();
  for (const auto &term : ambient_elem.poly()) {
    RingElem v = S.from_rational(Rational(term.c.get_num()));
    for (std::size_t k = 0; k < T.lifters.size(); ++k)
      if (term.m.e[k]) {
        const auto &[i, c] = T.lifters[k];
        RingElem L = S.variable(i) - S.from_rational(Rational(c));
        v = v * L.pow(term.m.e[k]);
      }
    acc = acc + v;
  }
  return acc;
}

} // namespace

RingElem Transport::pull(const RingElem &e) const {
  if (!(e.parent() == target))
    throw Error(ErrorCode::ParentMismatch, "element outside the transport target");
  return quotient.make(pull_to_source(*this, lift(e)).poly());
}

FreeVec Transport::pull(const FreeVec &v) const {
  FreeVec out;
  out.reserve(v.size());
  for (const auto &e : v) out.push_back(pull(e));
  return out;
}

FPModule Transport::pull(const FPModule &M) const {
  std::vector<FreeVec> rels;
  for (const auto &r : M.relations()) rels.push_back(pull(r));
  return FPModule(quotient, M.rank(), rels);
}

std::vector<RingElem> Transport::generators() const {
  std::vector<RingElem> out;
  for (std::size_t i = 0; i < source.nvars(); ++i) out.push_back(quotient.variable(i));
  return out;
}

Transport surjective_transport(const RingMap &f) {
  const RingSpec &A = f.target();
  const CoeffKind base = A.dom().kind;
  if (base == CoeffKind::Rationals)
    throw Error(ErrorCode::NonSurjectiveReduction,
                "Z[t] does not surject onto a ring over Q");
  Transport T{f.source(), f.source(), A, f.images(), {}, {}};
  const RingSpec amb = A.ambient();
  for (std::size_t k = 0; k < amb.nvars(); ++k) {
    bool found = false;
    for (std::size_t i = 0; i < T.images.size() && !found; ++i)
      if (auto c = variable_offset(T.images[i], k)) {
        T.lifters.emplace_back(i, *c);
        found = true;
      }
    if (!found)
      throw Error(ErrorCode::NonSurjectiveReduction,
                  "variable " + amb.vars()[k] + " is not an image plus a constant");
  }
  const RingSpec &S = T.source;
  if (base == CoeffKind::PrimeField) T.kernel.push_back(S.from_rational(Rational(A.dom().modulus)));
  for (const auto &g : A.ideal()) T.kernel.push_back(pull_to_source(T, amb.make(g)));
  for (std::size_t i = 0; i < T.images.size(); ++i) {
    RingElem r = S.variable(i) - pull_to_source(T, lift(T.images[i]));
    if (!r.is_zero()) T.kernel.push_back(r);
  }
  if (!T.kernel.empty()) T.quotient = RingSpec::quotient(S, T.kernel);
  return T;
}

Transport surjective_transport(const RingSpec &target, const std::vector<RingElem> &images) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < images.size(); ++i) names.push_back("t" + std::to_string(i + 1));
  return surjective_transport(RingMap(integer_polynomial_ring(names), target, images));
}

// Checkers

namespace {

CompletenessOptions no_schenzel() { return CompletenessOptions{false}; }

Verdict separated_and_ext1(const FPModule &M, const std::vector<RingElem> &a, DerivedBudget b) {
  DerivedBudget nb = b;
  nb.telescope_check = false;
  std::vector<Verdict> parts{is_separated(M, a, b.adic())};
  for (const auto &ai : a) parts.push_back(ext_localization(1, ai, M, nb).vanishing);
  return conjunction(parts, "separated-and-ext1");
}

Verdict invariance(const std::vector<std::pair<Verdict, Verdict>> &pairs) {
  bool any = false;
  for (const auto &[x, y] : pairs) {
    if (!x.decisive() || !y.decisive()) continue;
    any = true;
    if (x.status != y.status)
      return Verdict::fails({"transport-mismatch",
                             "verdict changed from " + std::string(to_string(x.status)) + " to " +
                                 std::string(to_string(y.status)) + " under transport",
                             {}, {}, {}});
  }
  if (!any) return Verdict::unknown("no decisive pair to compare");
  return Verdict::holds({"transport-invariant", "decisive verdicts agree after transport", {}, {}, {}});
}

Verdict cohomology_conjunction(const BoundedComplex &C, std::string kind,
                               const std::function<Verdict(const FPModule &)> &test) {
  CohomologyRange cr = cohomology_range(C);
  if (!cr.inf) return Verdict::holds({"exact", "the complex is exact", {}, {}, {}});
  std::vector<Verdict> parts;
  for (int j = *cr.inf; j <= *cr.sup; ++j) {
    Verdict v = test(cohomology(C, j));
    if (v.fails()) v.evidence.degree = j;
    parts.push_back(std::move(v));
  }
  return conjunction(parts, std::move(kind));
}

} // namespace

EquivalenceReport check_theorem2(const BoundedComplex &M, const std::vector<RingElem> &a,
                                 DerivedBudget b) {
  EquivalenceReport r;
  r.task = "theorem2";
  r.left = cohomology_conjunction(M, "complete-cohomology", [&](const FPModule &H) {
    return is_complete(H, a, b.adic(), no_schenzel());
  });
  Verdict cc = is_cohomologically_complete(M, a, b);
  Verdict sep = cohomology_conjunction(M, "separated-cohomology", [&](const FPModule &H) {
    return is_separated(H, a, b.adic());
  });
  r.right = conjunction({cc, sep}, "cc-and-separated");
  r.sub_reports = {{"cohomologically-complete", cc}, {"separated", sep}};
  r.consistent = consistency_of(r.left, r.right);
  r.digest = fnv1a_hex("theorem2|" + canonical_text(M) + "|" + canonical_text(a));
  return r;
}

namespace {

template <class X>
EquivalenceReport theorem3_report(const X &M, const std::vector<std::vector<RingElem>> &ideals,
                                  DerivedBudget b) {
  if (ideals.empty()) throw Error(ErrorCode::IllDefined, "no ideals given");
  EquivalenceReport r;
  r.task = "theorem3";
  std::vector<RingElem> all;
  std::string text = "theorem3|" + canonical_text(M);
  for (const auto &I : ideals) {
    all.insert(all.end(), I.begin(), I.end());
    text += "|" + canonical_text(I);
  }
  r.left = is_cohomologically_complete(M, all, b, CCRoute::DirectStage);
  std::vector<Verdict> parts;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    Verdict v = is_cohomologically_complete(M, ideals[i], b, CCRoute::Decomposed);
    r.sub_reports.push_back({"ideal-" + std::to_string(i), v});
    parts.push_back(std::move(v));
  }
  r.right = conjunction(parts, "per-ideal");
  r.consistent = consistency_of(r.left, r.right);
  r.digest = fnv1a_hex(text);
  return r;
}

} // namespace

EquivalenceReport check_theorem3(const FPModule &M,
                                 const std::vector<std::vector<RingElem>> &ideals,
                                 DerivedBudget b) {
  return theorem3_report(M, ideals, b);
}

EquivalenceReport check_theorem3(const BoundedComplex &M,
                                 const std::vector<std::vector<RingElem>> &ideals,
                                 DerivedBudget b) {
  return theorem3_report(M, ideals, b);
}

EquivalenceReport check_theorem4(const FPModule &M, const std::vector<RingElem> &a,
                                 DerivedBudget b, StepTwo step2) {
  EquivalenceReport r;
  r.task = "theorem4";
  r.left = is_complete(M, a, b.adic(), no_schenzel());
  r.right = separated_and_ext1(M, a, b);
  r.consistent = consistency_of(r.left, r.right);
  r.digest = fnv1a_hex("theorem4|" + canonical_text(M) + "|" + canonical_text(a));
  if (step2 == StepTwo::Off) return r;

  std::optional<Transport> T;
  try {
    T = surjective_transport(M.ring(), a);
  } catch (const Error &e) {
    if (step2 == StepTwo::Require || e.code() != ErrorCode::NonSurjectiveReduction) throw;
    r.sub_reports.push_back({"step2", Verdict::unknown(std::string("transport skipped: ") + e.what())});
    return r;
  }
  FPModule MB = T->pull(M);
  std::vector<RingElem> t = T->generators();
  Verdict lB = is_complete(MB, t, b.adic(), no_schenzel());
  Verdict rB = separated_and_ext1(MB, t, b);
  Verdict inv = invariance({{r.left, lB}, {r.right, rB}});
  r.sub_reports.push_back({"step2-left", lB});
  r.sub_reports.push_back({"step2-right", rB});
  r.sub_reports.push_back({"step2-invariance", inv});
  if (inv.fails()) r.consistent = Consistency::Inconsistent;
  return r;
}

Verdict telescope_comparison(const FPModule &M, const RingElem &a, DerivedBudget b) {
  if (!(a.parent() == M.ring())) throw Error(ErrorCode::ParentMismatch, "generator over wrong ring");
  if (M.is_zero()) return Verdict::holds({"zero", "M = 0", {}, {}, {}});
  const BoundedComplex Mc = BoundedComplex::single(M, 0);
  Budget used{0, 0, 2 * (b.stages + b.stable - 1)};
  bool all_hold = true, all_fail0 = true;
  Evidence last;
  for (int k = 0; k < b.stable; ++k) {
    const int N = b.stages + k;
    TelescopeStage T = telescope_stage({a}, N);
    ModuleHom c0 = induced_map(hom_precompose(T.augmentation, Mc), 0);
    if (!is_isomorphism(c0)) {
      all_hold = false;
      last = {"telescope-comparison",
              "M -> H^0 Hom(Tel_N, M) is not an isomorphism at N = " + std::to_string(N),
              {}, 0, N};
      continue;
    }
    all_fail0 = false;
    ComplexMap R = hom_precompose(telescope_inclusion({a}, N, 2 * N), Mc);
    if (!induced_map(R, -1).is_zero()) {
      all_hold = false;
      last = {"telescope-comparison", "stage map 2N -> N is nonzero on H^-1", {}, -1, N};
    }
  }
  if (all_hold)
    return Verdict::holds({"telescope-comparison",
                           "M -> Hom(Tel_N, M) is a pro-isomorphism at " +
                               std::to_string(b.stable) + " consecutive stages",
                           {}, {}, b.stages},
                          used);
  if (all_fail0 && !localization_vanishes(M, a)) {
    last.detail += "; persists since a is not nilpotent on M";
    return Verdict::fails(std::move(last), used);
  }
  return Verdict::unknown("telescope comparison not decisive at consecutive stages", used);
}

EquivalenceReport check_lemma1(const FPModule &M, const RingElem &a, DerivedBudget b) {
  EquivalenceReport r;
  r.task = "lemma1";
  DerivedBudget nb = b;
  nb.telescope_check = false;
  r.left = telescope_comparison(M, a, b);
  Verdict e0 = ext_localization(0, a, M, nb).vanishing;
  Verdict e1 = ext_localization(1, a, M, nb).vanishing;
  r.right = conjunction({e0, e1}, "ext-vanishing");
  r.consistent = consistency_of(r.left, r.right);

  Verdict sep = is_separated(M, {a}, b.adic());
  Verdict implied;
  if (!sep.holds())
    implied = Verdict::holds({"vacuous", "M is not known to be separated", {}, {}, {}});
  else if (e0.holds())
    implied = Verdict::holds({"separated-ext0", "separated and Ext^0 vanishes", {}, 0, {}});
  else if (e0.fails())
    implied = Verdict::fails({"separated-ext0", "separated but Ext^0 is nonzero",
                              e0.evidence.element, 0, {}});
  else
    implied = Verdict::unknown("Ext^0 undecided");
  r.sub_reports = {{"ext0", e0}, {"ext1", e1}, {"separated", sep}, {"separated-implies-ext0", implied}};
  if (implied.fails()) r.consistent = Consistency::Inconsistent;
  r.digest = fnv1a_hex("lemma1|" + canonical_text(M) + "|" + a.str());
  return r;
}

namespace {

StdBasis span_of(const RingSpec &R, std::size_t rank, std::vector<FreeVec> gens,
                 const std::vector<FreeVec> &base) {
  gens.insert(gens.end(), base.begin(), base.end());
  return std_basis(gens, R, rank, StdBasisOptions{false});
}

// H^i of Hom(plus_N[1], -) over both rings, compared as subquotients of the
// same free module after pulling the target side back.
Verdict stagewise_comparison(const Transport &T, const RingElem &bt, const RingElem &tb,
                             const FPModule &M, const FPModule &MB, int N) {
  BoundedComplex HA = hom_complex(shift(telescope_stage({bt}, N).plus, 1), M);
  BoundedComplex HB = hom_complex(shift(telescope_stage({tb}, N).plus, 1), MB);
  for (int i : {0, 1}) {
    const FPModule &EB = HB.entry(i);
    if (HA.entry(i).rank() != EB.rank())
      return Verdict::fails({"stage-shape", "Hom entries differ in rank", {}, i, N});
    std::vector<FreeVec> base = EB.relations();
    for (const auto &c : HB.diff_matrix(i - 1).columns()) base.push_back(c);
    std::vector<FreeVec> za;
    for (const auto &z : cohomology_data(HA, i).cycles) za.push_back(T.pull(z));
    StdBasis sa = span_of(T.quotient, EB.rank(), za, base);
    StdBasis sb = span_of(T.quotient, EB.rank(), cohomology_data(HB, i).cycles, base);
    if (!same_span(sa, sb))
      return Verdict::fails({"stage-mismatch",
                             "stage cohomology differs after transport", {}, i, N});
  }
  return Verdict::holds({"stagewise-isomorphic",
                         "H^0 and H^1 of the stage Hom complexes coincide after transport",
                         {}, {}, N},
                        Budget{0, 0, N});
}

} // namespace

EquivalenceReport check_lemma5(const RingMap &f, std::size_t b_index, const FPModule &M,
                               DerivedBudget b) {
  if (b_index >= f.images().size())
    throw Error(ErrorCode::IllDefined, "generator index out of range");
  if (!(M.ring() == f.target())) throw Error(ErrorCode::ParentMismatch, "module over wrong ring");
  Transport T = surjective_transport(f);
  const RingElem bt = f.images()[b_index];
  const RingElem tb = T.generators()[b_index];
  FPModule MB = T.pull(M);
  DerivedBudget nb = b;
  nb.telescope_check = false;

  EquivalenceReport r;
  r.task = "lemma5";
  Verdict a0 = ext_localization(0, bt, M, nb).vanishing;
  Verdict a1 = ext_localization(1, bt, M, nb).vanishing;
  Verdict b0 = ext_localization(0, tb, MB, nb).vanishing;
  Verdict b1 = ext_localization(1, tb, MB, nb).vanishing;
  r.left = conjunction({a0, a1}, "ext-vanishing-target");
  r.right = conjunction({b0, b1}, "ext-vanishing-source");
  Verdict stages = stagewise_comparison(T, bt, tb, M, MB, b.stages);
  r.sub_reports = {{"ext0-target", a0}, {"ext0-source", b0},       {"ext1-target", a1},
                   {"ext1-source", b1}, {"stagewise", stages}};
  r.consistent = consistency_of(r.left, r.right);
  for (const auto &[x, y] : {std::pair{a0, b0}, std::pair{a1, b1}})
    if (consistency_of(x, y) == Consistency::Inconsistent) r.consistent = Consistency::Inconsistent;
  if (stages.fails()) r.consistent = Consistency::Inconsistent;
  std::string text = "lemma5|" + f.source().description() + "->" + canonical_text(f.images()) +
                     "|" + std::to_string(b_index) + "|" + canonical_text(M);
  r.digest = fnv1a_hex(text);
  return r;
}

// Non-separated example

const Verdict &Example1::verdict(std::string_view name) const {
  for (const auto &nv : report)
    if (nv.name == name) return nv.verdict;
  throw Error(ErrorCode::IllDefined, "no verdict named " + std::string(name));
}

Example1 build_example1(int I, int N) {
  if (I < 2 || N < 2) throw Error(ErrorCode::IllDefined, "support and precision must be at least 2");
  if (I > 32 || N > 32) throw Error(ErrorCode::BudgetExceeded, "support or precision above 32");
  const RingSpec K = RingSpec::rationals();
  const RingSpec R = RingSpec::polynomial(K, {"t"});
  const RingElem t = R.variable(0);
  const std::size_t n = static_cast<std::size_t>(I);

  Matrix D(R, n, n);
  FreeVec m = zero_vec(R, n);
  for (std::size_t i = 0; i < n; ++i) {
    D(i, i) = t.pow(static_cast<unsigned>(i));
    m[i] = D(i, i);
  }
  BoundedComplex P(R, -1, {FPModule::free(R, n), FPModule::free(R, n)}, {D});
  FPModule M(R, n, D.columns());
  Example1 ex{I, N, R, P, M, m, {}, {}};
  const std::vector<std::string> mstr = element_strings(m);

  // Preimages of m under delta modulo t^N: v_i in 1 + (0 : t^i), and that
  // annihilator lies in (t^(N-i)), so every forced value is a unit.
  const RingSpec AN = RingSpec::power_series(K, "t", N);
  const FPModule line = FPModule::free(AN, 1);
  const int forced = std::min(I, N);
  std::vector<RingElem> ones;
  for (int i = 0; i < forced; ++i) {
    Kernel k = kernel_hom(ModuleHom::scalar(line, AN.variable(0).pow(static_cast<unsigned>(i))));
    for (const auto &g : k.inclusion.matrix().columns())
      if (!g[0].is_zero() && t_valuation(g[0]) < N - i)
        throw Error(ErrorCode::IllDefined, "annihilator check failed");
    ones.push_back(AN.one());
  }
  FdecApprox v = make_fdec(AN, ones);
  const bool no_decay = v.decay.back() == 0;
  Verdict nonzero =
      no_decay ? Verdict::holds({"forced-preimage",
                                 "every preimage of m is a unit at the first " +
                                     std::to_string(forced) +
                                     " indices modulo t^N, so none decays",
                                 mstr, {}, N},
                                Budget{0, 0, N})
               : Verdict::unknown("forced preimage decays");
  ex.report.push_back({"m-nonzero", nonzero});

  // m = t^j w_j + delta(z_j), w_j(i) = t^(i-j) for i >= j, z_j(i) = 1 for i < j.
  bool identities = true;
  for (int j = 0; j < N; ++j) {
    FreeVec w = zero_vec(R, n), z = zero_vec(R, n);
    for (int i = 0; i < I; ++i) {
      if (i >= j) w[static_cast<std::size_t>(i)] = t.pow(static_cast<unsigned>(i - j));
      else z[static_cast<std::size_t>(i)] = R.one();
    }
    identities = identities && add(scale(t.pow(static_cast<unsigned>(j)), w), D.apply(z)) == m;
    ex.containment.emplace_back(std::move(w), std::move(z));
  }
  Verdict powers = identities
                       ? Verdict::holds({"membership-identity",
                                         "m = t^j w_j + d(z_j) with w_j decaying and z_j "
                                         "finitely supported, for every j < N",
                                         mstr, {}, N},
                                        Budget{N, 0, 0})
                       : Verdict::fails({"membership-identity", "identity check failed", mstr, {}, N});
  ex.report.push_back({"m-in-powers", powers});

  Verdict sep = nonzero.holds() && powers.holds()
                    ? Verdict::fails({"not-separated",
                                      "m is nonzero (forced preimage) and lies in (t)^j M for j < N",
                                      mstr, 0, N},
                                     Budget{N, 0, N})
                    : Verdict::unknown("witness not certified");
  ex.report.push_back({"separated", sep});

  ComplexMap pi(P, BoundedComplex::single(M, 0), {{0, Matrix::identity(R, n)}});
  ex.report.push_back({"quasi-iso", is_quasi_iso(pi)});
  ex.report.push_back({"cc", is_cohomologically_complete(M, {t})});
  return ex;
}

EquivalenceReport check_theorem2(const Example1 &ex, DerivedBudget) {
  EquivalenceReport r;
  r.task = "theorem2";
  const Verdict &sep = ex.verdict("separated");
  const Verdict &cc = ex.verdict("cc");
  if (sep.fails()) {
    Evidence w = sep.evidence;
    w.kind = "not-complete";
    w.detail = "H^0 is not separated, hence not complete: " + w.detail;
    r.left = Verdict::fails(std::move(w), sep.budget);
  } else {
    r.left = Verdict::unknown("separatedness of H^0 undecided");
  }
  r.right = conjunction({cc, sep}, "cc-and-separated");
  r.sub_reports = ex.report;
  r.consistent = consistency_of(r.left, r.right);
  r.digest = fnv1a_hex("theorem2|example1|" + std::to_string(ex.support) + "|" +
                       std::to_string(ex.precision));
  return r;
}

} // namespace adicomp
