#include "adicomp/cli.hpp"

#include "adicomp/error.hpp"

#include <random>

namespace adicomp {

namespace {

// Bounded draws from mt19937_64 by rejection, so corpora do not depend on the
// standard library's distribution implementations.
struct Draw {
  std::mt19937_64 eng;
  explicit Draw(std::uint64_t seed) : eng(seed) {}

  long range(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x;
    do x = eng();
    while (x >= limit);
    return lo + static_cast<long>(x % span);
  }
  bool chance(long num, long den) { return range(0, den - 1) < num; }
  template <class T> const T &pick(const std::vector<T> &v) {
    return v[static_cast<std::size_t>(range(0, static_cast<long>(v.size()) - 1))];
  }
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RingDescription base(RingKind k, long p = 0) {
  RingDescription d;
  d.kind = k;
  d.modulus = p;
  return d;
}

RingDescription poly(RingDescription b, std::vector<std::string> vars) {
  RingDescription d;
  d.kind = RingKind::Polynomial;
  d.base = std::make_shared<RingDescription>(std::move(b));
  d.vars = std::move(vars);
  return d;
}

RingDescription series(int precision) {
  RingDescription d;
  d.kind = RingKind::PowerSeries;
  d.base = std::make_shared<RingDescription>(base(RingKind::Rationals));
  d.var = "t";
  d.precision = precision;
  return d;
}

enum class CatalogRing { Z, Qx, Qxy, F5xy, Qt8, F5x };

RingDescription describe(CatalogRing c) {
  switch (c) {
  case CatalogRing::Z: return base(RingKind::Integers);
  case CatalogRing::Qx: return poly(base(RingKind::Rationals), {"x"});
  case CatalogRing::Qxy: return poly(base(RingKind::Rationals), {"x", "y"});
  case CatalogRing::F5xy: return poly(base(RingKind::PrimeField, 5), {"x", "y"});
  case CatalogRing::Qt8: return series(8);
  case CatalogRing::F5x: return poly(base(RingKind::PrimeField, 5), {"x"});
  }
  return base(RingKind::Integers);
}

std::vector<std::vector<std::string>> ideal_catalog(CatalogRing c) {
  switch (c) {
  case CatalogRing::Z: return {{"2"}, {"3"}, {"5"}, {"6"}};
  case CatalogRing::Qx: return {{"x"}, {"x - 1"}, {"x^2"}};
  case CatalogRing::Qxy: return {{"x"}, {"y"}, {"x", "y"}, {"x + y"}};
  case CatalogRing::F5xy: return {{"x"}, {"y"}, {"x", "y"}, {"x + 1", "y"}};
  case CatalogRing::Qt8: return {{"t"}};
  case CatalogRing::F5x: return {{"x"}, {"x + 2"}};
  }
  return {};
}

RingElem monomial(Draw &d, const RingSpec &R, int deg) {
  RingElem m = R.one();
  for (int s = 0; s < deg; ++s)
    m = m * R.variable(static_cast<std::size_t>(d.range(0, static_cast<long>(R.nvars()) - 1)));
  return m;
}

long nonzero_coeff(Draw &d, long bound) {
  long c = d.range(1, bound);
  return d.chance(1, 2) ? c : -c;
}

RingElem homogeneous(Draw &d, const RingSpec &R, int deg) {
  if (R.nvars() == 0) return R.from_int(nonzero_coeff(d, 12));
  RingElem e = R.zero();
  for (long k = d.range(1, 2); k > 0; --k) e = e + R.from_int(nonzero_coeff(d, 3)) * monomial(d, R, deg);
  return e.is_zero() ? monomial(d, R, deg) : e;
}

RingElem any_elem(Draw &d, const RingSpec &R) {
  if (R.nvars() == 0) return R.from_int(d.range(-12, 12));
  RingElem e = R.zero();
  for (long k = d.range(1, 3); k > 0; --k)
    e = e + R.from_int(nonzero_coeff(d, 4)) * monomial(d, R, static_cast<int>(d.range(0, 3)));
  return e;
}

std::vector<std::string> strings(const FreeVec &v) {
  std::vector<std::string> out;
  for (const auto &e : v) out.push_back(e.str());
  return out;
}

enum class Style { Graded, Nilpotent, Random };

Style draw_style(Draw &d, const RingSpec &R, std::size_t rank, std::size_t gens) {
  long x = d.range(0, 19);
  if (R.nvars() == 0) return x < 6 ? Style::Nilpotent : Style::Random;
  if (x < 9) return Style::Graded;
  if (x < 15 && rank * gens <= 4) return Style::Nilpotent;
  return x < 15 ? Style::Graded : Style::Random;
}

std::size_t draw_rank(Draw &d) {
  long x = d.range(0, 19);
  return x < 10 ? 1 : x < 17 ? 2 : 3;
}

ModuleSpec random_module(Draw &d, const RingSpec &R, const std::vector<RingElem> &ideal,
                         std::size_t rank, Style style) {
  std::vector<FreeVec> rels;
  if (style == Style::Nilpotent) {
    for (std::size_t s = 0; s < rank; ++s)
      for (const auto &a : ideal) {
        FreeVec v = zero_vec(R, rank);
        v[s] = R.nvars() == 0 ? a.pow(static_cast<unsigned>(d.range(1, 2)))
                              : a.pow(static_cast<unsigned>(d.range(1, 3)));
        rels.push_back(std::move(v));
      }
  }
  std::vector<int> gdeg(rank, 0);
  if (style == Style::Graded)
    for (auto &g : gdeg) g = static_cast<int>(d.range(0, 1));
  const long extra = std::max<long>(0, d.range(0, 4 - static_cast<long>(rels.size())));
  for (long k = 0; k < extra; ++k) {
    FreeVec v = zero_vec(R, rank);
    const int D = static_cast<int>(d.range(1, 3));
    for (std::size_t s = 0; s < rank; ++s) {
      if (d.chance(1, 2)) continue;
      if (style == Style::Graded && R.nvars() > 0)
        v[s] = D >= gdeg[s] ? homogeneous(d, R, D - gdeg[s]) : R.zero();
      else v[s] = any_elem(d, R);
    }
    if (!is_zero(v)) rels.push_back(std::move(v));
  }
  ModuleSpec m;
  m.rank = rank;
  for (const auto &v : rels) m.relations.push_back(strings(v));
  return m;
}

std::vector<RingElem> parse_all(const RingSpec &R, const std::vector<std::string> &gens) {
  std::vector<RingElem> out;
  for (const auto &g : gens) out.push_back(R.parse(g));
  return out;
}

TaskSpec task(std::string command, Json args) {
  TaskSpec t;
  t.command = std::move(command);
  t.arguments = std::move(args);
  return t;
}

InstanceFile module_instance(Draw &d, CatalogRing c) {
  InstanceFile f;
  f.ring = describe(c);
  RingSpec R = make_ring(f.ring);
  auto gens = d.pick(ideal_catalog(c));
  std::vector<RingElem> a = parse_all(R, gens);
  std::size_t rank = draw_rank(d);
  f.modules["M"] = random_module(d, R, a, rank, draw_style(d, R, rank, a.size()));
  f.ideals["a"] = gens;
  return f;
}

InstanceFile pid_instance(Draw &d) {
  InstanceFile f = module_instance(d, CatalogRing::Z);
  f.tasks.push_back(task("check_theorem4", {{"module", "M"}, {"ideal", "a"}}));
  f.tasks.push_back(task("check_lemma1", {{"module", "M"}, {"element", f.ideals["a"][0]}}));
  return f;
}

InstanceFile mixed_instance(Draw &d, std::size_t i) {
  static const std::vector<CatalogRing> rings{CatalogRing::Z, CatalogRing::Qx, CatalogRing::Qxy,
                                              CatalogRing::F5xy, CatalogRing::Qt8};
  // Every ring appears in each run of five; the draw varies the rest.
  InstanceFile f = module_instance(d, rings[i % rings.size()]);
  f.tasks.push_back(task("check_theorem4", {{"module", "M"}, {"ideal", "a"}}));
  return f;
}

InstanceFile theorem3_instance(Draw &d, std::size_t i) {
  const CatalogRing c = i % 2 ? CatalogRing::F5xy : CatalogRing::Qxy;
  static const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs{
      {{"x"}, {"y"}}, {{"x"}, {"x", "y"}}, {{"x + y"}, {"y"}}, {{"x^2"}, {"y"}}, {{"x*y"}, {"x"}}};
  InstanceFile f;
  f.ring = describe(c);
  RingSpec R = make_ring(f.ring);
  const auto &[g1, g2] = d.pick(pairs);
  std::vector<RingElem> all = parse_all(R, g1);
  for (const auto &e : parse_all(R, g2)) all.push_back(e);
  std::size_t rank = d.chance(3, 4) ? 1 : 2;
  Style st = d.range(0, 9) < 5 ? Style::Graded : Style::Random;
  if (d.chance(2, 5)) st = Style::Nilpotent;
  // Nilpotent on both ideals: powers of x and y suffice for every catalog pair.
  std::vector<RingElem> nil{R.parse("x"), R.parse("y")};
  f.modules["M"] = random_module(d, R, st == Style::Nilpotent ? nil : all, rank,
                                 st == Style::Nilpotent && rank > 2 ? Style::Graded : st);
  f.ideals["a1"] = g1;
  f.ideals["a2"] = g2;
  f.tasks.push_back(task("check_theorem3", {{"module", "M"}, {"ideals", {"a1", "a2"}}}));
  return f;
}

Matrix elementary(const RingSpec &R, std::size_t n, std::size_t k, std::size_t l, const RingElem &c) {
  Matrix E = Matrix::identity(R, n);
  E(k, l) = c;
  return E;
}

InstanceFile theorem2_instance(Draw &d, std::size_t i) {
  static const std::vector<CatalogRing> rings{CatalogRing::Z, CatalogRing::Qx, CatalogRing::Qt8,
                                              CatalogRing::Qxy};
  const CatalogRing c = rings[i % rings.size()];
  InstanceFile f;
  f.ring = describe(c);
  RingSpec R = make_ring(f.ring);
  auto gens = d.pick(ideal_catalog(c));
  const bool graded = R.nvars() > 1;

  // Summands live in the window lo..lo+3, so the amplitude is at most 3.
  const int lo = static_cast<int>(d.range(-2, 0));
  const int width = 4;
  struct Part {
    std::size_t rank = 0;
    std::vector<FreeVec> rels; // local coordinates
  };
  std::vector<std::vector<Part>> parts(width); // per degree, per summand
  struct Arrow {
    int deg;
    std::size_t src, tgt; // summand index at deg and deg + 1
    Matrix phi;
  };
  std::vector<Arrow> arrows;
  const long summands = d.range(1, 3);
  for (long s = 0; s < summands; ++s) {
    if (d.chance(1, 2)) {
      int j = static_cast<int>(d.range(0, width - 2));
      std::size_t p = static_cast<std::size_t>(d.range(1, 2)), q = static_cast<std::size_t>(d.range(1, 2));
      Matrix phi(R, q, p);
      for (std::size_t r = 0; r < q; ++r)
        for (std::size_t k = 0; k < p; ++k)
          if (d.chance(2, 3)) phi(r, k) = graded ? homogeneous(d, R, 1) : any_elem(d, R);
      parts[static_cast<std::size_t>(j)].push_back({p, {}});
      parts[static_cast<std::size_t>(j + 1)].push_back({q, {}});
      arrows.push_back({j, parts[static_cast<std::size_t>(j)].size() - 1,
                        parts[static_cast<std::size_t>(j + 1)].size() - 1, std::move(phi)});
    } else {
      int j = static_cast<int>(d.range(0, width - 1));
      RingElem r = graded ? homogeneous(d, R, static_cast<int>(d.range(1, 3))) : any_elem(d, R);
      Part p{1, {}};
      if (!r.is_zero() && d.chance(3, 4)) p.rels.push_back({r});
      parts[static_cast<std::size_t>(j)].push_back(std::move(p));
    }
  }

  // Global coordinates per degree.
  std::vector<std::vector<std::size_t>> offset(width);
  std::vector<std::size_t> rank(width, 0);
  for (int j = 0; j < width; ++j)
    for (const auto &p : parts[static_cast<std::size_t>(j)]) {
      offset[static_cast<std::size_t>(j)].push_back(rank[static_cast<std::size_t>(j)]);
      rank[static_cast<std::size_t>(j)] += p.rank;
    }
  std::vector<std::vector<FreeVec>> rels(width);
  for (int j = 0; j < width; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    for (std::size_t s = 0; s < parts[uj].size(); ++s)
      for (const auto &r : parts[uj][s].rels) {
        FreeVec v = zero_vec(R, rank[uj]);
        for (std::size_t k = 0; k < r.size(); ++k) v[offset[uj][s] + k] = r[k];
        rels[uj].push_back(std::move(v));
      }
  }
  std::vector<Matrix> diffs;
  for (int j = 0; j + 1 < width; ++j)
    diffs.emplace_back(R, rank[static_cast<std::size_t>(j + 1)], rank[static_cast<std::size_t>(j)]);
  for (const auto &a : arrows) {
    const auto uj = static_cast<std::size_t>(a.deg);
    for (std::size_t r = 0; r < a.phi.rows(); ++r)
      for (std::size_t k = 0; k < a.phi.cols(); ++k)
        diffs[uj](offset[uj + 1][a.tgt] + r, offset[uj][a.src] + k) = a.phi(r, k);
  }

  // Hide the block structure by elementary changes of basis over the
  // ungraded rings: d^j -> E_{j+1} d^j E_j^{-1}, relations -> E_j R.
  if (!graded)
    for (int j = 0; j < width; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const std::size_t n = rank[uj];
      if (n < 2 || d.chance(1, 3)) continue;
      std::size_t k = static_cast<std::size_t>(d.range(0, static_cast<long>(n) - 1));
      std::size_t l = (k + 1 + static_cast<std::size_t>(d.range(0, static_cast<long>(n) - 2))) % n;
      RingElem cst = R.from_int(nonzero_coeff(d, 2));
      Matrix E = elementary(R, n, k, l, cst), Einv = elementary(R, n, k, l, -cst);
      for (auto &v : rels[uj]) v = E.apply(v);
      if (j + 1 < width) diffs[uj] = diffs[uj] * Einv;
      if (j > 0) diffs[uj - 1] = E * diffs[uj - 1];
    }

  ComplexSpec cs;
  cs.lo = lo;
  for (int j = 0; j < width; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    ModuleSpec m;
    m.rank = rank[uj];
    for (const auto &v : rels[uj]) m.relations.push_back(strings(v));
    cs.entries.push_back(std::move(m));
  }
  for (const auto &D : diffs) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < D.rows(); ++r) {
      std::vector<std::string> row;
      for (std::size_t k = 0; k < D.cols(); ++k) row.push_back(D(r, k).str());
      rows.push_back(std::move(row));
    }
    cs.differentials.push_back(std::move(rows));
  }
  f.complexes["C"] = std::move(cs);
  f.ideals["a"] = gens;
  f.tasks.push_back(task("check_theorem2", {{"complex", "C"}, {"ideal", "a"}}));
  return f;
}

InstanceFile lemma5_instance(Draw &d, std::size_t i) {
  InstanceFile f;
  MapSpec map;
  switch (i % 3) {
  case 0:
    f.ring = describe(CatalogRing::Z);
    map = {{"t"}, {std::to_string(d.pick(std::vector<long>{2, 3, 6, 10}))}};
    break;
  case 1:
    f.ring = describe(CatalogRing::F5x);
    map = {{"t"}, {d.chance(1, 2) ? "x" : "x + " + std::to_string(d.range(1, 4))}};
    break;
  default:
    f.ring = describe(CatalogRing::F5xy);
    map = {{"t1", "t2"}, {"x", d.chance(1, 2) ? "y" : "y + " + std::to_string(d.range(1, 4))}};
    break;
  }
  RingSpec R = make_ring(f.ring);
  const long index = d.range(0, static_cast<long>(map.images.size()) - 1);
  std::vector<RingElem> b{R.parse(map.images[static_cast<std::size_t>(index)])};
  std::size_t rank = d.chance(3, 4) ? 1 : 2;
  f.modules["M"] = random_module(d, R, b, rank, draw_style(d, R, rank, 1));
  f.maps["f"] = std::move(map);
  TaskSpec t = task("check_lemma5", {{"map", "f"}, {"index", index}, {"module", "M"}});
  t.budget.stages = 3;
  f.tasks.push_back(std::move(t));
  return f;
}

} // namespace

const std::vector<std::string> &known_profiles() {
  static const std::vector<std::string> names{"pid", "mixed", "theorem2", "theorem3", "lemma5"};
  return names;
}

std::vector<InstanceFile> generate_instances(std::uint64_t seed, int count, std::string_view profile) {
  const auto &names = known_profiles();
  if (std::find(names.begin(), names.end(), profile) == names.end())
    throw Error(ErrorCode::UnknownProfile, "unknown profile '" + std::string(profile) + "'");
  if (count < 0) throw Error(ErrorCode::IllDefined, "negative instance count");
  std::vector<InstanceFile> out;
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    const std::uint64_t sub = mix(seed, i);
    Draw d(sub);
    InstanceFile f = profile == "pid"        ? pid_instance(d)
                     : profile == "mixed"    ? mixed_instance(d, i)
                     : profile == "theorem2" ? theorem2_instance(d, i)
                     : profile == "theorem3" ? theorem3_instance(d, i)
                                             : lemma5_instance(d, i);
    f.seed = sub;
    out.push_back(std::move(f));
  }
  return out;
}

} // namespace adicomp
