#include "adicomp/error.hpp"
#include "adicomp/modules.hpp"
#include "fp_oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace adicomp;

namespace {

RingSpec qxy() { return RingSpec::polynomial(RingSpec::rationals(), {"x", "y"}); }

FreeVec vec(const RingSpec &R, std::initializer_list<const char *> xs) {
  FreeVec v;
  for (const char *s : xs) v.push_back(R.parse(s));
  return v;
}

} // namespace

TEST_CASE("std_basis of (x, y) with its syzygy") {
  RingSpec A = qxy();
  StdBasis sb = std_basis({vec(A, {"x"}), vec(A, {"y"})}, A, 1);
  REQUIRE(sb.generators.size() == 2);
  CHECK(std::count(sb.generators.begin(), sb.generators.end(), vec(A, {"x"})) == 1);
  CHECK(std::count(sb.generators.begin(), sb.generators.end(), vec(A, {"y"})) == 1);
  REQUIRE(sb.syzygies.size() == 1);
  FreeVec s = sb.syzygies[0];
  CHECK(s[0] * A.parse("x") + s[1] * A.parse("y") == A.zero());
  CHECK((s == vec(A, {"-y", "x"}) || s == vec(A, {"y", "-x"})));
}

TEST_CASE("std_basis Euclidean and degenerate cases") {
  RingSpec Z = RingSpec::integers();
  StdBasis sb = std_basis({vec(Z, {"2", "0"}), vec(Z, {"0", "3"})}, Z, 2);
  REQUIRE(sb.snf);
  CHECK(sb.snf->diagonal[0] == Z.one());
  CHECK(sb.snf->diagonal[1] == Z.from_int(6));
  StdBasis empty = std_basis({}, Z, 2);
  CHECK(empty.generators.empty());
  CHECK(!contains(empty, vec(Z, {"1", "0"})));
  CHECK(contains(empty, vec(Z, {"0", "0"})));
}

TEST_CASE("std_basis is canonical under shuffling (property)") {
  testgen::Rng r(99);
  std::vector<RingSpec> rings = {qxy(), RingSpec::integers(),
                                 integer_polynomial_ring({"x", "y"}),
                                 RingSpec::power_series(RingSpec::rationals(), "t", 5)};
  for (const auto &R : rings)
    for (int it = 0; it < 25; ++it) {
      std::vector<FreeVec> gens;
      // Integer-coefficient bivariate syzygies swell quickly; keep them linear.
      const bool zxy = R.nvars() == 2 && !R.dom().is_field();
      int n = static_cast<int>(r.range(1, zxy ? 3 : 4));
      for (int k = 0; k < n; ++k) gens.push_back(testgen::random_vec(r, R, 2, zxy ? 1 : 2, 4));
      StdBasis a = std_basis(gens, R, 2, {false});
      std::vector<FreeVec> shuffled = gens;
      std::reverse(shuffled.begin(), shuffled.end());
      shuffled.push_back(add(gens.front(), gens.back()));
      StdBasis b = std_basis(shuffled, R, 2, {true});
      CHECK(same_span(a, b));
      CHECK(a.generators == b.generators);
      for (const auto &g : gens) {
        Membership m = membership(g, b);
        REQUIRE(m.member);
        FreeVec acc = zero_vec(R, 2);
        for (std::size_t i = 0; i < shuffled.size(); ++i) acc = add(acc, scale(m.coefficients[i], shuffled[i]));
        CHECK(acc == g);
      }
      for (const auto &s : b.syzygies) {
        FreeVec acc = zero_vec(R, 2);
        for (std::size_t i = 0; i < shuffled.size(); ++i) acc = add(acc, scale(s[i], shuffled[i]));
        CHECK(is_zero(acc));
      }
    }
}

TEST_CASE("kernel_hom examples") {
  RingSpec Z = RingSpec::integers();
  FPModule z1 = FPModule::free(Z, 1);
  Kernel k = kernel_hom(ModuleHom::scalar(z1, Z.from_int(2)));
  CHECK(k.module.is_zero());

  FPModule z4 = FPModule::cyclic(Z, {Z.from_int(4)});
  Matrix m(Z, 1, 1);
  m(0, 0) = Z.from_int(2);
  Kernel k2 = kernel_hom(ModuleHom(z1, z4, m));
  // Kernel is 2Z: the inclusion image is the span of 2 (enumerate residues).
  StdBasis img = std_basis(k2.inclusion.matrix().columns(), Z, 1);
  CHECK(img.generators == std::vector<FreeVec>{vec(Z, {"2"})});
  CHECK(!k2.module.is_zero());

  RingSpec A = qxy();
  FPModule A2 = FPModule::free(A, 2), A1 = FPModule::free(A, 1);
  Matrix xy(A, 1, 2);
  xy(0, 0) = A.parse("x");
  xy(0, 1) = A.parse("y");
  Kernel k3 = kernel_hom(ModuleHom(A2, A1, xy));
  REQUIRE(k3.inclusion.matrix().cols() == 1);
  FreeVec g = k3.inclusion.matrix().column(0);
  CHECK((g == vec(A, {"-y", "x"}) || g == vec(A, {"y", "-x"})));
}

TEST_CASE("image_coker examples") {
  RingSpec Z = RingSpec::integers();
  FPModule z1 = FPModule::free(Z, 1);
  ImageCoker ic = image_coker(ModuleHom::scalar(z1, Z.from_int(12)));
  EuclideanStructure es = euclidean_structure(ic.cokernel);
  REQUIRE(es.torsion.size() == 1);
  CHECK(es.torsion[0] == Z.from_int(12));
  CHECK(es.free_rank == 0);

  FPModule N = FPModule::cyclic(Z, {Z.from_int(5)});
  ImageCoker zero = image_coker(ModuleHom::zero(z1, N));
  CHECK(zero.image.is_zero());
  CHECK(is_isomorphism(ModuleHom(N, zero.cokernel, Matrix::identity(Z, 1))));

  // Truncated non-separated example differential, support 3 over K[t]/(t^4).
  RingSpec S = RingSpec::power_series(RingSpec::rationals(), "t", 4);
  FPModule F3 = FPModule::free(S, 3);
  Matrix d(S, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) d(i, i) = S.variable(0).pow(static_cast<unsigned>(i));
  ImageCoker e1 = image_coker(ModuleHom(F3, F3, d));
  CHECK(e1.cokernel.relations() ==
        std::vector<FreeVec>{vec(S, {"1", "0", "0"}), vec(S, {"0", "t", "0"}),
                             vec(S, {"0", "0", "t^2"})});
}

TEST_CASE("membership examples") {
  RingSpec A = qxy();
  StdBasis cube = std_basis({vec(A, {"x^3"}), vec(A, {"x^2*y"}), vec(A, {"x*y^2"}), vec(A, {"y^3"})}, A, 1);
  Membership m = membership(vec(A, {"x^2*y"}), cube);
  CHECK(m.member);
  StdBasis xy = std_basis({vec(A, {"x"}), vec(A, {"y"})}, A, 1);
  CHECK(!membership(vec(A, {"1"}), xy).member);

  RingSpec Z = RingSpec::integers();
  StdBasis s = std_basis({vec(Z, {"8"}), vec(Z, {"12"})}, Z, 1);
  Membership w = membership(vec(Z, {"4"}), s);
  REQUIRE(w.member);
  CHECK(w.coefficients[0] * Z.from_int(8) + w.coefficients[1] * Z.from_int(12) == Z.from_int(4));
}

TEST_CASE("ideal_power_act examples") {
  RingSpec Z = RingSpec::integers();
  FPModule z12 = FPModule::cyclic(Z, {Z.from_int(12)});
  PowerAct p = ideal_power_act({Z.from_int(2)}, 3, z12);
  CHECK(p.power.generators == std::vector<FreeVec>{vec(Z, {"4"})});
  REQUIRE(p.stabilized_at);
  CHECK(*p.stabilized_at == 2);

  RingSpec K = RingSpec::polynomial(RingSpec::rationals(), {"t"});
  FPModule kt3 = FPModule::cyclic(K, {K.parse("t^3")});
  PowerAct q = ideal_power_act({K.variable(0)}, 3, kt3);
  CHECK(q.power.module.is_zero());
  CHECK(is_isomorphism(ModuleHom(kt3, q.power.quotient, Matrix::identity(K, 1))));

  RingSpec A = qxy();
  FPModule ax = FPModule::cyclic(A, {A.parse("x")});
  PowerAct r = ideal_power_act({A.parse("x"), A.parse("y")}, 2, ax);
  CHECK(!r.stabilized_at);
  StdBasis y2 = std_basis({vec(A, {"y^2"}), vec(A, {"x"})}, A, 1);
  StdBasis got = std_basis([&] {
    auto g = r.power.generators;
    g.push_back(vec(A, {"x"}));
    return g;
  }(), A, 1);
  CHECK(same_span(got, y2));

  CHECK_THROWS_AS((void)ideal_power_act({Z.from_int(2)}, 17, z12), Error);
}

TEST_CASE("module_is_zero examples") {
  RingSpec Z = RingSpec::integers();
  FPModule z3 = FPModule::free(Z, 3);
  CHECK(image_coker(ModuleHom::identity(z3)).cokernel.is_zero());
  CHECK(!FPModule::cyclic(Z, {Z.from_int(12)}).is_zero());
  RingSpec Qx = RingSpec::polynomial(RingSpec::rationals(), {"x"});
  CHECK(FPModule::cyclic(Qx, {Qx.parse("x"), Qx.parse("1 + x")}).is_zero());
  CHECK(FPModule::zero(Z).is_zero());
}

TEST_CASE("ModuleHom rejects ill-defined matrices") {
  RingSpec Z = RingSpec::integers();
  FPModule z4 = FPModule::cyclic(Z, {Z.from_int(4)});
  FPModule z6 = FPModule::cyclic(Z, {Z.from_int(6)});
  CHECK_THROWS_AS(ModuleHom(z4, z6, Matrix::identity(Z, 1)), Error);
  Matrix m(Z, 1, 1);
  m(0, 0) = Z.from_int(3);
  CHECK_NOTHROW(ModuleHom(z4, z6, m));
}

TEST_CASE("kernel/image/cokernel agree with enumeration over F_p (property)") {
  testgen::Rng r(31337);
  for (long p : {2L, 3L, 5L}) {
    RingSpec F = RingSpec::prime_field(p);
    for (int it = 0; it < 60; ++it) {
      std::size_t s = static_cast<std::size_t>(r.range(0, 3));
      std::size_t n = static_cast<std::size_t>(r.range(0, 3));
      std::vector<FreeVec> rn;
      for (long k = r.range(0, 2); k > 0; --k) rn.push_back(testgen::random_vec(r, F, n, 0, p));
      Matrix Fm = testgen::random_matrix(r, F, n, s, 0, p);
      std::vector<fporacle::Vec> fcols = fporacle::columns(Fm, p);
      std::vector<fporacle::Vec> rnv;
      for (const auto &v : rn) rnv.push_back(fporacle::to_vec(v, p));
      fporacle::VecSet spanN = fporacle::span(rnv, n, p);
      // Source relations drawn from the oracle preimage so f is well defined.
      std::vector<fporacle::Vec> pre;
      for (const auto &x : fporacle::all_vectors(s, p))
        if (spanN.count(fporacle::apply(fcols, x, n, p))) pre.push_back(x);
      std::vector<FreeVec> rm;
      for (long k = r.range(0, 2); k > 0; --k)
        rm.push_back(fporacle::from_vec(pre[static_cast<std::size_t>(r.range(0, static_cast<long>(pre.size()) - 1))], F));
      FPModule M(F, s, rm), N(F, n, rn);
      ModuleHom f(M, N, Fm);
      std::vector<fporacle::Vec> rmv;
      for (const auto &v : rm) rmv.push_back(fporacle::to_vec(v, p));
      fporacle::VecSet spanM = fporacle::span(rmv, s, p);

      Kernel k = kernel_hom(f);
      // Inclusion image plus relations must be exactly the preimage set.
      std::vector<fporacle::Vec> kg = fporacle::columns(k.inclusion.matrix(), p);
      kg.insert(kg.end(), rmv.begin(), rmv.end());
      fporacle::VecSet kset = fporacle::span(kg, s, p);
      CHECK(kset == fporacle::VecSet(pre.begin(), pre.end()));
      CHECK(fporacle::module_size(k.module, p) == pre.size() / spanM.size());
      CHECK(compose(f, k.inclusion).is_zero());
      CHECK(is_injective(k.inclusion));

      ImageCoker ic = image_coker(f);
      std::vector<fporacle::Vec> ig = fcols;
      ig.insert(ig.end(), rnv.begin(), rnv.end());
      std::size_t img_size = fporacle::span(ig, n, p).size() / spanN.size();
      CHECK(fporacle::module_size(ic.image, p) == img_size);
      std::size_t nsize = fporacle::module_size(N, p);
      CHECK(fporacle::module_size(ic.cokernel, p) * img_size == nsize);
      CHECK(compose(ic.projection, f).is_zero());
      CHECK(is_surjective(ic.projection));
    }
  }
}

TEST_CASE("power chain monotone and power containment (property)") {
  testgen::Rng r(4);
  RingSpec A = RingSpec::polynomial(RingSpec::prime_field(5), {"x", "y"});
  for (int it = 0; it < 20; ++it) {
    std::vector<FreeVec> rels;
    for (long k = r.range(0, 2); k > 0; --k) rels.push_back(testgen::random_vec(r, A, 2, 2, 3));
    FPModule M(A, 2, rels);
    std::vector<RingElem> a = {A.parse("x"), A.parse("y")};
    std::vector<RingElem> b = {A.parse("x*y"), A.parse("x^2 + y^2")};
    PowerChain ca = power_chain(M, a, 4, false);
    PowerChain cb = power_chain(M, b, 4, false);
    for (std::size_t j = 0; j + 1 < ca.levels.size(); ++j)
      for (const auto &g : ca.levels[j + 1].generators) CHECK(contains(ca.levels[j], g));
    for (std::size_t j = 0; j < cb.levels.size(); ++j)
      for (const auto &g : cb.levels[j].generators) CHECK(contains(ca.level(j), g));
  }
}

TEST_CASE("localization and gradings") {
  RingSpec Z = RingSpec::integers();
  CHECK(localization_vanishes(FPModule::cyclic(Z, {Z.from_int(8)}), Z.from_int(2)));
  CHECK(!localization_vanishes(FPModule::cyclic(Z, {Z.from_int(12)}), Z.from_int(2)));
  CHECK(!localization_vanishes(FPModule::free(Z, 1), Z.from_int(2)));
  RingSpec A = qxy();
  FPModule m = FPModule::cyclic(A, {A.parse("x^2"), A.parse("x*y"), A.parse("y^3")});
  CHECK(localization_vanishes(m, A.parse("x + y")));
  CHECK(!localization_vanishes(FPModule::cyclic(A, {A.parse("x")}), A.parse("y")));
  CHECK(localization_vanishes(FPModule::cyclic(A, {A.parse("x*y - 1")}), A.parse("x - x^2*y")));
  FPModule g(A, 2, {vec(A, {"x", "y^2"})});
  auto deg = generator_degrees(g);
  REQUIRE(deg);
  CHECK((*deg)[0] + 1 == (*deg)[1] + 2);
  CHECK(!generator_degrees(FPModule(A, 1, {vec(A, {"x + 1"})})));
}
