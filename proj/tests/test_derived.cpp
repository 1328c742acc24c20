#include "adicomp/derived.hpp"
#include "adicomp/error.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace adicomp;

namespace {

RingSpec Z() { return RingSpec::integers(); }

FPModule zmod(long n) { return FPModule::cyclic(Z(), {Z().from_int(n)}); }

std::vector<std::size_t> ranks(const BoundedComplex &C) {
  std::vector<std::size_t> out;
  for (int j = C.lo(); j <= C.hi(); ++j) out.push_back(C.entry(j).rank());
  return out;
}

std::vector<std::string> invariants(const FPModule &M) {
  std::vector<std::string> out;
  for (const auto &d : euclidean_structure(M).torsion) out.push_back(d.str());
  return out;
}

// Random module over one of a few rings, with a generator to test against.
struct Case {
  FPModule M;
  RingElem a;
};

Case random_case(testgen::Rng &r) {
  static const RingSpec rings[] = {
      RingSpec::integers(),
      RingSpec::polynomial(RingSpec::prime_field(3), {"x"}),
      RingSpec::polynomial(RingSpec::rationals(), {"x", "y"}),
  };
  const RingSpec &R = rings[r.range(0, 2)];
  const std::size_t rank = static_cast<std::size_t>(r.range(1, 2));
  std::vector<FreeVec> rels;
  long nrel = r.range(0, 2);
  for (long k = 0; k < nrel; ++k) rels.push_back(testgen::random_vec(r, R, rank, 2, 6));
  RingElem a = R.nvars() == 0 ? R.from_int(r.range(2, 6))
                              : R.variable(static_cast<std::size_t>(r.range(0, static_cast<long>(R.nvars()) - 1)));
  if (R.nvars() > 0 && r.coin()) a = a + R.from_int(r.range(0, 2));
  return {FPModule(R, rank, rels), a};
}

} // namespace

TEST_CASE("telescope_stage shapes") {
  RingElem two = Z().from_int(2), three = Z().from_int(3);
  TelescopeStage t = telescope_stage({two}, 3);
  CHECK(t.complex.lo() == 0);
  CHECK(ranks(t.complex) == std::vector<std::size_t>{4, 4});
  CHECK(ranks(t.plus) == std::vector<std::size_t>{3, 4});
  TelescopeStage t2 = telescope_stage({two, three}, 2);
  CHECK(ranks(t2.complex) == std::vector<std::size_t>{9, 18, 9});
  // H^1 of a single stage is A / (a^N).
  CHECK(invariants(cohomology(t.complex, 1)) == std::vector<std::string>{"8"});
  CHECK(cohomology(t.complex, 0).is_zero());
  CHECK_THROWS_AS(telescope_stage({two}, 0), Error);
}

TEST_CASE("koszul_stage examples") {
  KoszulStage k = koszul_stage({Z().from_int(2)}, 3);
  CHECK(k.complex.diff_matrix(0)(0, 0) == Z().from_int(8));
  BoundedComplex H = hom_complex(shift(k.complex, 1), zmod(12));
  CHECK(invariants(cohomology(H, 1)) == std::vector<std::string>{"4"});
  CHECK(invariants(cohomology(H, 0)) == std::vector<std::string>{"4"});

  RingSpec P = RingSpec::power_series(RingSpec::rationals(), "t", 3);
  CHECK(koszul_stage({P.parse("t")}, 3).complex.diff_matrix(0).is_zero());

  RingSpec Qxy = RingSpec::polynomial(RingSpec::rationals(), {"x", "y"});
  KoszulStage kxy = koszul_stage({Qxy.parse("x"), Qxy.parse("y")}, 1);
  CHECK(ranks(kxy.complex) == std::vector<std::size_t>{1, 2, 1});
  // Transitions are chain maps (checked on construction).
  CHECK_NOTHROW(koszul_transition({Qxy.parse("x"), Qxy.parse("y")}, 1, 3));
}

TEST_CASE("ext_localization examples") {
  ExtResult e0 = ext_localization(0, Z().from_int(2), zmod(3));
  CHECK(e0.vanishing.fails());
  REQUIRE(e0.value);
  CHECK(invariants(*e0.value) == std::vector<std::string>{"3"});
  CHECK(e0.routes_agree);

  ExtResult e1 = ext_localization(1, Z().from_int(2), FPModule::free(Z(), 1));
  CHECK(e1.vanishing.fails());
  CHECK(e1.routes_agree);

  RingSpec Qt = RingSpec::polynomial(RingSpec::rationals(), {"t"});
  FPModule M = FPModule::cyclic(Qt, {Qt.parse("t^3")});
  for (int i : {0, 1}) {
    ExtResult e = ext_localization(i, Qt.parse("t"), M);
    CHECK(e.vanishing.holds());
    CHECK(e.routes_agree);
    REQUIRE(e.stages.size() == 2);
  }
  CHECK_THROWS_AS(ext_localization(2, Qt.parse("t"), M), Error);
}

TEST_CASE("derived_completion_stage examples") {
  RingSpec Qt = RingSpec::polynomial(RingSpec::rationals(), {"t"});
  FPModule M = FPModule::cyclic(Qt, {Qt.parse("t^3")});
  DerivedCompletionStage s = derived_completion_stage(M, {Qt.parse("t")}, 3);
  CHECK(s.criterion.holds());
  CHECK(s.strict.fails()); // finite stage keeps (0 : t^3) in degree -1
  REQUIRE(s.koszul.size() == 1);
  CHECK(s.koszul[0].holds());

  DerivedCompletionStage z = derived_completion_stage(FPModule::free(Z(), 1), {Z().from_int(2)}, 4);
  CHECK(z.criterion.fails());
  CHECK(z.criterion.evidence.degree == 0);
  CHECK(z.koszul[0].fails());

  DerivedCompletionStage o = derived_completion_stage(FPModule::zero(Z()), {Z().from_int(2)}, 2);
  CHECK(o.strict.holds());
  CHECK(o.criterion.holds());

  CHECK_THROWS_AS(derived_completion_stage(M, {Qt.parse("t")}, 40), Error);
}

TEST_CASE("is_cohomologically_complete examples") {
  RingSpec Qt = RingSpec::polynomial(RingSpec::rationals(), {"t"});
  FPModule M = FPModule::cyclic(Qt, {Qt.parse("t^3")});
  CHECK(is_cohomologically_complete(M, {Qt.parse("t")}).holds());
  Verdict z = is_cohomologically_complete(FPModule::free(Z(), 1), {Z().from_int(2)});
  REQUIRE(z.fails());
  CHECK(z.evidence.degree == 1);
  CHECK(is_cohomologically_complete(M, {Qt.parse("t")}, {}, CCRoute::DirectStage).holds());

  // Complexes go through their cohomology.
  BoundedComplex C = BoundedComplex::two_term(
      ModuleHom(FPModule::free(Z(), 1), FPModule::free(Z(), 1), [] {
        Matrix m(RingSpec::integers(), 1, 1);
        m(0, 0) = RingSpec::integers().from_int(4);
        return m;
      }()),
      -1);
  CHECK(is_cohomologically_complete(C, {Z().from_int(2)}).holds());
}

TEST_CASE("telescope invariants (property)") {
  testgen::Rng r(41);
  RingSpec Qxy = RingSpec::polynomial(RingSpec::rationals(), {"x", "y"});
  for (int it = 0; it < 12; ++it) {
    RingElem a = testgen::random_elem(r, Qxy, 2, 2, 3);
    RingElem b = testgen::random_elem(r, Qxy, 2, 2, 3);
    if (a.is_zero()) a = Qxy.parse("x");
    if (b.is_zero()) b = Qxy.parse("y");
    int N = static_cast<int>(r.range(1, 3));

    // Stage inclusions are chain maps commuting with augmentations.
    ComplexMap inc = telescope_inclusion({a}, N, N + 1);
    Matrix lhs = telescope_stage({a}, N + 1).augmentation.component_matrix(0) *
                 inc.component_matrix(0);
    CHECK(lhs == telescope_stage({a}, N).augmentation.component_matrix(0));

    // Concatenated generators give the tensor of the factor stages.
    BoundedComplex ab = telescope_stage({a, b}, N).complex;
    BoundedComplex tens = tensor_complex(telescope_stage({a}, N).complex,
                                         telescope_stage({b}, N).complex);
    REQUIRE(ranks(ab) == ranks(tens));
    for (int j = ab.lo(); j < ab.hi(); ++j) CHECK(ab.diff_matrix(j) == tens.diff_matrix(j));

    // Adjunction at stage, entrywise.
    FPModule M(Qxy, 1, {{testgen::random_elem(r, Qxy, 2, 2, 3)}});
    BoundedComplex lhsH = hom_complex(ab, M);
    BoundedComplex rhsH = hom_complex(telescope_stage({b}, N).complex,
                                      hom_complex(telescope_stage({a}, N).complex, M));
    CHECK(ranks(lhsH) == ranks(rhsH));
    CHECK(lhsH.lo() == rhsH.lo());
  }
}

TEST_CASE("Hom(plus[1], M) has H^0 = M and H^1 = 0 at every stage (property)") {
  testgen::Rng r(43);
  for (int it = 0; it < 20; ++it) {
    Case c = random_case(r);
    int N = static_cast<int>(r.range(1, 3));
    TelescopeCheck tc = telescope_check(c.a, c.M, N);
    CHECK(tc.h0_is_m);
    CHECK(tc.h1_zero);
    CHECK(tc.transition_is_a);
    BoundedComplex H = hom_complex(shift(telescope_stage({c.a}, N).plus, 1), c.M);
    CohomologyRange cr = cohomology_range(H);
    if (cr.inf) {
      CHECK(*cr.inf >= 0);
      CHECK(*cr.sup <= 1);
    }
  }
}

TEST_CASE("route agreement and completeness implies cc (property)") {
  testgen::Rng r(47);
  int decisive = 0;
  DerivedBudget b;
  b.telescope_check = false;
  for (int it = 0; it < 60; ++it) {
    Case c = random_case(r);
    Verdict tel = telescope_route(c.a, c.M, b);
    Verdict kos = koszul_route(c.a, c.M, b);
    if (tel.decisive() && kos.decisive()) {
      ++decisive;
      CHECK(tel.status == kos.status);
    }
    Verdict com = is_complete(c.M, {c.a});
    if (com.holds() && tel.decisive()) CHECK(tel.holds());
  }
  CHECK(decisive >= 30);
}

TEST_CASE("direct stage agrees with the decomposition (property)") {
  testgen::Rng r(53);
  RingSpec F3xy = RingSpec::polynomial(RingSpec::prime_field(3), {"x", "y"});
  int decisive = 0;
  for (int it = 0; it < 25; ++it) {
    std::vector<FreeVec> rels;
    for (int k = 0; k < 2; ++k) rels.push_back(testgen::random_vec(r, F3xy, 1, 3, 2));
    if (r.coin()) rels.push_back({F3xy.parse("x^2")});
    if (r.coin()) rels.push_back({F3xy.parse("y^3")});
    FPModule M(F3xy, 1, rels);
    std::vector<RingElem> a{F3xy.parse("x"), F3xy.parse("y")};
    DerivedBudget b;
    b.stages = 4;
    Verdict dec = is_cohomologically_complete(M, a, b);
    Verdict dir = is_cohomologically_complete(M, a, b, CCRoute::DirectStage);
    if (dec.decisive() && dir.decisive()) {
      ++decisive;
      CHECK(dec.status == dir.status);
    }
  }
  CHECK(decisive >= 10);
}
