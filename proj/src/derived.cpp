#include "adicomp/derived.hpp"

#include "adicomp/error.hpp"

namespace adicomp {

namespace {

void require_generators(const std::vector<RingElem> &a) {
  if (a.empty()) throw Error(ErrorCode::IllDefined, "empty generator list");
  for (const auto &x : a)
    if (!(x.parent() == a.front().parent()))
      throw Error(ErrorCode::ParentMismatch, "generators over different rings");
}

BoundedComplex unit_complex(const RingSpec &R) {
  return BoundedComplex::single(FPModule::free(R, 1), 0);
}

BoundedComplex single_telescope(const RingElem &a, int N) {
  const RingSpec &R = a.parent();
  const std::size_t n = static_cast<std::size_t>(N) + 1;
  Matrix D(R, n, n);
  D(0, 0) = R.one();
  for (std::size_t c = 1; c < n; ++c) {
    D(c - 1, c) = R.one();
    D(c, c) = -a;
  }
  return BoundedComplex(R, 0, {FPModule::free(R, n), FPModule::free(R, n)}, {D});
}

ComplexMap single_augmentation(const BoundedComplex &T) {
  const RingSpec &R = T.ring();
  Matrix u(R, 1, T.entry(0).rank());
  u(0, 0) = R.one();
  return ComplexMap(T, unit_complex(R), {{0, u}});
}

Matrix embedding(const RingSpec &R, std::size_t rows, std::size_t cols, std::size_t shift = 0) {
  Matrix m(R, rows, cols);
  for (std::size_t i = 0; i < cols; ++i) m(i + shift, i) = R.one();
  return m;
}

ComplexMap single_inclusion(const RingElem &a, int N, int N2) {
  const RingSpec &R = a.parent();
  const std::size_t n = static_cast<std::size_t>(N) + 1, n2 = static_cast<std::size_t>(N2) + 1;
  return ComplexMap(single_telescope(a, N), single_telescope(a, N2),
                    {{0, embedding(R, n2, n)}, {1, embedding(R, n2, n)}});
}

BoundedComplex single_koszul(const RingElem &a, int j) {
  const RingSpec &R = a.parent();
  Matrix d(R, 1, 1);
  d(0, 0) = a.pow(static_cast<unsigned>(j));
  return BoundedComplex(R, 0, {FPModule::free(R, 1), FPModule::free(R, 1)}, {d});
}

// Drop the first degree-0 basis element.
BoundedComplex plus_of(const BoundedComplex &T) {
  const RingSpec &R = T.ring();
  std::vector<FPModule> entries;
  std::vector<Matrix> diffs;
  const std::size_t r0 = T.entry(0).rank();
  entries.push_back(FPModule::free(R, r0 - 1));
  for (int j = 1; j <= T.hi(); ++j) entries.push_back(T.entry(j));
  Matrix d0 = T.diff_matrix(0);
  Matrix p(R, d0.rows(), r0 - 1);
  for (std::size_t i = 0; i < d0.rows(); ++i)
    for (std::size_t c = 1; c < r0; ++c) p(i, c - 1) = d0(i, c);
  diffs.push_back(std::move(p));
  for (int j = 1; j < T.hi(); ++j) diffs.push_back(T.diff_matrix(j));
  return BoundedComplex(R, 0, std::move(entries), std::move(diffs));
}

ComplexMap restrict_to_plus(const ComplexMap &f, const BoundedComplex &Ps,
                            const BoundedComplex &Pt) {
  std::map<int, Matrix> comps;
  Matrix f0 = f.component_matrix(0);
  Matrix m(f0.ring(), f0.rows() - 1, f0.cols() - 1);
  for (std::size_t i = 1; i < f0.rows(); ++i)
    for (std::size_t c = 1; c < f0.cols(); ++c) m(i - 1, c - 1) = f0(i, c);
  comps.emplace(0, std::move(m));
  for (int j = 1; j <= Ps.hi(); ++j) comps.emplace(j, f.component_matrix(j));
  return ComplexMap(Ps, Pt, std::move(comps));
}

StdBasis span_in(const FPModule &M, const std::vector<FreeVec> &gens) {
  std::vector<FreeVec> all = M.relations();
  all.insert(all.end(), gens.begin(), gens.end());
  return std_basis(all, M.ring(), M.rank(), StdBasisOptions{false});
}

std::optional<FreeVec> nonzero_generator(const FPModule &M, const StdBasis &sb) {
  for (const auto &g : sb.generators)
    if (!M.is_zero_elem(g)) return g;
  return std::nullopt;
}

// phi_N : M -> H^0(Hom(plus_N[1], M)), m -> (a^(N-k) m)_k.
std::optional<ModuleHom> telescope_phi(const RingElem &a, const FPModule &M, int N,
                                       const CohomologyData &h0, const FPModule &entry) {
  const RingSpec &R = M.ring();
  const std::size_t r = M.rank();
  const std::size_t width = (static_cast<std::size_t>(N) + 1) * r;
  std::vector<FreeVec> cols;
  for (std::size_t s = 0; s < r; ++s) {
    FreeVec v = zero_vec(R, width);
    for (int k = 0; k <= N; ++k)
      v[static_cast<std::size_t>(k) * r + s] = a.pow(static_cast<unsigned>(N - k));
    auto c = express(v, h0.cycles, entry);
    if (!c) return std::nullopt;
    cols.push_back(std::move(*c));
  }
  return ModuleHom(M, h0.module, Matrix::from_columns(R, h0.cycles.size(), cols));
}

} // namespace

TelescopeStage telescope_stage(const std::vector<RingElem> &a, int N) {
  require_generators(a);
  if (N < 1) throw Error(ErrorCode::BudgetExceeded, "telescope stage must be positive");
  BoundedComplex T = single_telescope(a[0], N);
  ComplexMap u = single_augmentation(T);
  for (std::size_t i = 1; i < a.size(); ++i) {
    BoundedComplex Ti = single_telescope(a[i], N);
    u = tensor_map(u, single_augmentation(Ti));
    T = tensor_complex(T, Ti);
  }
  BoundedComplex P = plus_of(T);
  const RingSpec &R = T.ring();
  std::map<int, Matrix> inc;
  inc.emplace(0, embedding(R, T.entry(0).rank(), P.entry(0).rank(), 1));
  for (int j = 1; j <= T.hi(); ++j) inc.emplace(j, Matrix::identity(R, T.entry(j).rank()));
  ComplexMap pi(P, T, std::move(inc));
  return {a, N, T, u, P, pi};
}

ComplexMap telescope_inclusion(const std::vector<RingElem> &a, int N, int N2) {
  require_generators(a);
  if (N2 < N) throw Error(ErrorCode::IllDefined, "stage inclusion goes upward");
  ComplexMap f = single_inclusion(a[0], N, N2);
  for (std::size_t i = 1; i < a.size(); ++i) f = tensor_map(f, single_inclusion(a[i], N, N2));
  return f;
}

ComplexMap telescope_plus_inclusion(const std::vector<RingElem> &a, int N, int N2) {
  ComplexMap f = telescope_inclusion(a, N, N2);
  return restrict_to_plus(f, plus_of(f.source()), plus_of(f.target()));
}

KoszulStage koszul_stage(const std::vector<RingElem> &a, int j) {
  require_generators(a);
  if (j < 1) throw Error(ErrorCode::BudgetExceeded, "Koszul exponent must be positive");
  BoundedComplex K = single_koszul(a[0], j);
  for (std::size_t i = 1; i < a.size(); ++i) K = tensor_complex(K, single_koszul(a[i], j));
  return {a, j, K};
}

ComplexMap koszul_transition(const std::vector<RingElem> &a, int j, int j2) {
  require_generators(a);
  if (j2 < j) throw Error(ErrorCode::IllDefined, "Koszul transition goes upward");
  auto single = [&](const RingElem &x) {
    const RingSpec &R = x.parent();
    Matrix m(R, 1, 1);
    m(0, 0) = x.pow(static_cast<unsigned>(j2 - j));
    return ComplexMap(single_koszul(x, j), single_koszul(x, j2),
                      {{0, Matrix::identity(R, 1)}, {1, m}});
  };
  ComplexMap f = single(a[0]);
  for (std::size_t i = 1; i < a.size(); ++i) f = tensor_map(f, single(a[i]));
  return f;
}

TelescopeCheck telescope_check(const RingElem &a, const FPModule &M, int N) {
  TelescopeCheck tc;
  BoundedComplex Mc = BoundedComplex::single(M, 0);
  std::vector<std::optional<ModuleHom>> phis;
  for (int n : {N, N + 1}) {
    BoundedComplex H = hom_complex(shift(telescope_stage({a}, n).plus, 1), M);
    CohomologyData h0 = cohomology_data(H, 0);
    CohomologyData h1 = cohomology_data(H, 1);
    tc.h0.push_back(h0.module);
    tc.h1.push_back(h1.module);
    phis.push_back(telescope_phi(a, M, n, h0, H.entry(0)));
  }
  tc.h0_is_m = phis[0] && phis[1] && is_isomorphism(*phis[0]) && is_isomorphism(*phis[1]);
  tc.h1_zero = tc.h1[0].is_zero() && tc.h1[1].is_zero();
  if (tc.h0_is_m) {
    ComplexMap R = hom_precompose(shift_map(telescope_plus_inclusion({a}, N, N + 1), 1), Mc);
    ModuleHom ind = induced_map(R, 0);
    tc.transition_is_a = equal_maps(compose(ind, *phis[1]),
                                    compose(*phis[0], ModuleHom::scalar(M, a)));
  }
  return tc;
}

ExtResult ext_localization(int i, const RingElem &a, const FPModule &M, DerivedBudget b) {
  if (i != 0 && i != 1) throw Error(ErrorCode::IllDefined, "only Ext^0 and Ext^1 are computed");
  if (!(a.parent() == M.ring())) throw Error(ErrorCode::ParentMismatch, "generator over wrong ring");
  ExtResult res;
  res.degree = i;
  PrincipalFacts f = principal_facts(M, a, b.adic());
  res.vanishing = i == 0 ? ext0_vanishing(f, b.adic()) : ext1_vanishing(f, b.adic());
  res.vanishing.evidence.degree = i;
  if (i == 0) {
    if (f.stabilized_at)
      res.value = ideal_power_act({a}, *f.stabilized_at, M, b.depth).power.module;
    else if (f.divisible_zero && *f.divisible_zero)
      res.value = FPModule::zero(M.ring());
  } else if (res.vanishing.holds()) {
    res.value = FPModule::zero(M.ring());
  }
  if (b.telescope_check) {
    TelescopeCheck tc = telescope_check(a, M, b.stages);
    for (int k = 0; k < 2; ++k)
      res.stages.push_back({b.stages + k, i == 0 ? tc.h0[static_cast<std::size_t>(k)]
                                                 : tc.h1[static_cast<std::size_t>(k)]});
    res.routes_agree = tc.ok();
    res.vanishing.budget.stages = b.stages + 1;
  }
  return res;
}

Verdict telescope_route(const RingElem &a, const FPModule &M, DerivedBudget b) {
  Verdict e0 = ext_localization(0, a, M, b).vanishing;
  DerivedBudget nb = b;
  nb.telescope_check = false;
  Verdict e1 = ext_localization(1, a, M, nb).vanishing;
  Verdict v = conjunction({e0, e1}, "ext-vanishing");
  if (v.fails()) v.evidence.degree = e0.fails() ? 0 : 1;
  return v;
}

Verdict koszul_route(const RingElem &a, const FPModule &M, DerivedBudget b) {
  if (!(a.parent() == M.ring())) throw Error(ErrorCode::ParentMismatch, "generator over wrong ring");
  std::vector<StdBasis> tors, quot;
  std::optional<int> tstable, qstable;
  Budget used{0, b.window, 0};
  for (int j = 1; j <= b.window + 1 && !(tstable && qstable); ++j) {
    BoundedComplex H = hom_complex(shift(koszul_stage({a}, j).complex, 1), M);
    tors.push_back(span_in(M, cohomology_data(H, 0).cycles));
    quot.push_back(span_in(M, H.diff_matrix(0).columns()));
    used.window = j;
    if (j >= 2) {
      if (!tstable && same_span(tors[tors.size() - 2], tors.back())) tstable = j - 1;
      if (!qstable && same_span(quot[quot.size() - 2], quot.back())) qstable = j - 1;
    }
  }
  Verdict torsion =
      tstable ? Verdict::holds({"pro-zero",
                                "(0 :_M a^j) stabilizes at j = " + std::to_string(*tstable) +
                                    " and a^j kills it",
                                {}, {}, tstable},
                               used)
              : Verdict::unknown("torsion tower still growing", used);
  Verdict quotient = Verdict::unknown("quotient tower still shrinking", used);
  if (qstable) {
    auto w = nonzero_generator(M, quot[static_cast<std::size_t>(*qstable - 1)]);
    quotient = w ? Verdict::fails({"completion-kernel",
                                   "a^j M stabilizes to a nonzero submodule, the kernel of M -> "
                                   "completion",
                                   element_strings(*w), 0, qstable},
                                  used)
                 : Verdict::holds({"nilpotent", "a^j M = 0", {}, {}, qstable}, used);
  } else {
    PrincipalFacts f = principal_facts(M, a, b.adic());
    if (f.nilpotent)
      quotient = Verdict::holds({"nilpotent", "a acts nilpotently", {}, {}, {}}, used);
    else if (f.never_stabilizes)
      quotient = Verdict::fails({"completion-cokernel",
                                 "a^j M never stabilizes (" + f.never_reason +
                                     "); the completion is uncountable",
                                 {}, 0, {}},
                                used);
  }
  return conjunction({torsion, quotient}, "koszul");
}

Verdict stage_criterion(const FPModule &M, const std::vector<RingElem> &a, int N) {
  require_generators(a);
  const RingSpec &R = M.ring();
  Budget used{0, 0, 2 * N};
  for (const auto &ai : a) {
    RingElem p = ai.pow(static_cast<unsigned>(N));
    for (std::size_t s = 0; s < M.rank(); ++s) {
      FreeVec v = scale(p, unit_vec(R, M.rank(), s));
      if (!M.is_zero_elem(v))
        return Verdict::fails({"stage-comparison",
                               "M -> H^0 = M/(a^N)M is not injective at N = " + std::to_string(N),
                               element_strings(v), 0, N},
                              used);
    }
  }
  ComplexMap t = koszul_transition(a, N, 2 * N);
  ComplexMap Rm = hom_precompose(t, BoundedComplex::single(M, 0));
  for (int k = 1; k <= static_cast<int>(a.size()); ++k)
    if (!induced_map(Rm, -k).is_zero())
      return Verdict::fails({"stage-transition",
                             "stage map 2N -> N is nonzero on H^" + std::to_string(-k),
                             {}, -k, N},
                            used);
  return Verdict::holds({"stage-criterion",
                         "H^0 comparison is an isomorphism and negative cohomology is pro-zero",
                         {}, {}, N},
                        used);
}

namespace {

Verdict direct_stage(const FPModule &M, const std::vector<RingElem> &a, DerivedBudget b) {
  std::vector<Verdict> vs;
  for (int k = 0; k < b.stable; ++k) vs.push_back(stage_criterion(M, a, b.stages + k));
  Budget used{0, 0, b.stages + b.stable - 1};
  bool all_hold = true, all_fail0 = true;
  for (const auto &v : vs) {
    all_hold = all_hold && v.holds();
    all_fail0 = all_fail0 && v.fails() && v.evidence.degree == 0;
  }
  if (all_hold)
    return Verdict::holds({"direct-stage",
                           "stage criterion holds at " + std::to_string(b.stable) +
                               " consecutive stages from N = " + std::to_string(b.stages),
                           {}, {}, b.stages},
                          used);
  if (all_fail0 && !ideal_nilpotent_on(M, a)) {
    Evidence w = vs.back().evidence;
    w.kind = "direct-stage";
    w.detail += "; persists at every stage since some generator is not nilpotent on M";
    return Verdict::fails(std::move(w), used);
  }
  return Verdict::unknown("stage criterion not decisive at consecutive stages", used);
}

} // namespace

Verdict is_cohomologically_complete(const FPModule &M, const std::vector<RingElem> &a,
                                    DerivedBudget b, CCRoute route) {
  require_generators(a);
  if (!(a.front().parent() == M.ring()))
    throw Error(ErrorCode::ParentMismatch, "generators over wrong ring");
  if (M.is_zero()) return Verdict::holds({"zero", "M = 0", {}, {}, {}});
  if (route == CCRoute::DirectStage) return direct_stage(M, a, b);
  DerivedBudget nb = b;
  nb.telescope_check = false;
  std::vector<Verdict> parts;
  for (const auto &ai : a) parts.push_back(telescope_route(ai, M, nb));
  if (parts.size() == 1) return parts.front();
  return conjunction(parts, "decomposed");
}

Verdict is_cohomologically_complete(const BoundedComplex &C, const std::vector<RingElem> &a,
                                    DerivedBudget b, CCRoute route) {
  CohomologyRange cr = cohomology_range(C);
  if (!cr.inf) return Verdict::holds({"exact", "the complex is exact", {}, {}, {}});
  std::vector<Verdict> parts;
  for (int j = *cr.inf; j <= *cr.sup; ++j) {
    Verdict v = is_cohomologically_complete(cohomology(C, j), a, b, route);
    if (v.fails()) v.evidence.degree = j;
    parts.push_back(std::move(v));
  }
  return conjunction(parts, "cohomology");
}

DerivedCompletionStage derived_completion_stage(const BoundedComplex &C,
                                                const std::vector<RingElem> &a, int N,
                                                DerivedBudget b) {
  require_generators(a);
  if (N > 2 * b.stages)
    throw Error(ErrorCode::BudgetExceeded,
                "stage " + std::to_string(N) + " exceeds budget " + std::to_string(2 * b.stages));
  std::size_t width = 1;
  for (std::size_t i = 0; i < a.size(); ++i) width *= static_cast<std::size_t>(N) + 1;
  std::size_t crank = 0;
  if (!C.empty())
    for (int j = C.lo(); j <= C.hi(); ++j) crank += C.entry(j).rank();
  if (width * crank > 600)
    throw Error(ErrorCode::BudgetExceeded, "telescope Hom complex too large");
  TelescopeStage T = telescope_stage(a, N);
  BoundedComplex H = hom_complex(T.complex, C);
  ComplexMap cmp = hom_precompose(T.augmentation, C);
  DerivedCompletionStage out{T, H, cmp, is_quasi_iso(cmp), {}, {}};
  std::vector<Verdict> crit;
  CohomologyRange cr = cohomology_range(C);
  if (cr.inf)
    for (int j = *cr.inf; j <= *cr.sup; ++j) {
      FPModule Hj = cohomology(C, j);
      if (Hj.is_zero()) continue;
      Verdict v = stage_criterion(Hj, a, N);
      if (v.fails()) v.evidence.detail = "H^" + std::to_string(j) + ": " + v.evidence.detail;
      crit.push_back(std::move(v));
      for (const auto &ai : a) out.koszul.push_back(koszul_route(ai, Hj, b));
    }
  out.criterion = crit.empty() ? Verdict::holds({"exact", "no cohomology", {}, {}, {}})
                               : conjunction(crit, "stage-criterion");
  return out;
}

DerivedCompletionStage derived_completion_stage(const FPModule &M, const std::vector<RingElem> &a,
                                                int N, DerivedBudget b) {
  return derived_completion_stage(BoundedComplex::single(M, 0), a, N, b);
}

} // namespace adicomp
