#include "adicomp/modules.hpp"

#include "adicomp/error.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

namespace adicomp {

namespace {

bool same_term(const MTerm &a, const MTerm &b) {
  return a.pos == b.pos && a.m == b.m && a.c == b.c;
}

bool same_mpoly(const MPoly &a, const MPoly &b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), same_term);
}

std::vector<Poly> polys(const FreeVec &v) {
  std::vector<Poly> out;
  out.reserve(v.size());
  for (const auto &e : v) out.push_back(e.poly());
  return out;
}

MPoly to_m(const FreeVec &v, const PolyCtx &ctx, std::uint32_t offset = 0) {
  return to_mpoly(polys(v), ctx, offset);
}

FreeVec from_m(const MPoly &f, const RingSpec &ring, std::size_t rank,
               std::uint32_t offset = 0) {
  std::vector<Poly> ps = from_mpoly(f, rank, offset);
  FreeVec v;
  v.reserve(rank);
  for (auto &p : ps) v.push_back(ring.make(p));
  return v;
}

// J * e_p for every ideal generator and position.
std::vector<MPoly> ideal_pads(const RingSpec &ring, std::size_t rank) {
  std::vector<MPoly> out;
  for (std::size_t p = 0; p < rank; ++p)
    for (const auto &j : ring.ideal()) {
      MPoly f;
      for (const auto &t : j) f.push_back(MTerm{static_cast<std::uint32_t>(p), t.m, t.c});
      out.push_back(std::move(f));
    }
  return out;
}

void check_rank(const FreeVec &v, std::size_t rank) {
  if (v.size() != rank) throw Error(ErrorCode::ParentMismatch, "free-module rank mismatch");
}

} // namespace

StdBasis std_basis(const std::vector<FreeVec> &gens, const RingSpec &ring,
                   std::size_t rank, StdBasisOptions opts) {
  const RingSpec amb = ring.ambient();
  const PolyCtx &ctx = amb.ctx();
  StdBasis sb{ring, rank, gens, {}, {}, false, {}, {}, {}, 0};
  sb.tracked = opts.track;
  for (const auto &g : gens) check_rank(g, rank);

  std::vector<MPoly> pads = ideal_pads(ring, rank);
  std::vector<MPoly> all;
  all.reserve(gens.size() + pads.size());
  for (const auto &g : gens) all.push_back(to_m(g, ctx));
  all.insert(all.end(), pads.begin(), pads.end());
  sb.ncols = all.size();
  const std::size_t m = gens.size();

  if (opts.track && amb.euclidean()) {
    std::vector<FreeVec> cols;
    for (const auto &f : all) cols.push_back(from_m(f, amb, rank));
    sb.snf = smith_form(Matrix::from_columns(amb, rank, cols));
    for (std::size_t j = sb.snf->rank; j < sb.ncols; ++j) {
      FreeVec k = sb.snf->V.column(j);
      k.resize(m);
      FreeVec s = push(ring, k);
      if (!is_zero(s)) sb.syzygies.push_back(std::move(s));
    }
    sb.gb = groebner_basis(all, ctx);
  } else if (opts.track) {
    const auto r = static_cast<std::uint32_t>(rank);
    std::vector<MPoly> ext;
    for (std::size_t i = 0; i < all.size(); ++i) {
      MPoly f = all[i];
      f.push_back(MTerm{r + static_cast<std::uint32_t>(i), Monomial{}, Rational(1)});
      ext.push_back(std::move(f));
    }
    // Coefficients only matter modulo the ideal; without these the tracking
    // part grows unboundedly over Z[t]/(p, ...).
    for (std::size_t i = 0; i < all.size(); ++i)
      for (const auto &j : ring.ideal()) {
        MPoly f;
        for (const auto &t : j) f.push_back(MTerm{r + static_cast<std::uint32_t>(i), t.m, t.c});
        ext.push_back(std::move(f));
      }
    sb.ext = groebner_basis(ext, ctx);
    std::vector<MPoly> first;
    for (const auto &f : sb.ext) {
      if (f.front().pos >= r) {
        FreeVec s = from_m(f, ring, m, r);
        if (!is_zero(s)) sb.syzygies.push_back(std::move(s));
        continue;
      }
      MPoly h;
      for (const auto &t : f)
        if (t.pos < r) h.push_back(t);
      first.push_back(std::move(h));
    }
    sb.gb = groebner_basis(first, ctx);
  } else {
    sb.gb = groebner_basis(all, ctx);
  }

  for (const auto &g : sb.gb) {
    FreeVec v = from_m(g, ring, rank);
    if (!is_zero(v)) sb.generators.push_back(std::move(v));
  }
  return sb;
}

FreeVec normal_form(const FreeVec &v, const StdBasis &sub) {
  check_rank(v, sub.rank);
  const PolyCtx &ctx = sub.ring.ambient().ctx();
  MPoly r = reduce(to_m(v, ctx), sub.gb, ctx);
  return from_m(r, sub.ring, sub.rank);
}

bool contains(const StdBasis &sub, const FreeVec &v) {
  check_rank(v, sub.rank);
  const PolyCtx &ctx = sub.ring.ambient().ctx();
  return reduce(to_m(v, ctx), sub.gb, ctx).empty();
}

bool same_span(const StdBasis &a, const StdBasis &b) {
  if (a.rank != b.rank || a.gb.size() != b.gb.size()) return false;
  for (std::size_t i = 0; i < a.gb.size(); ++i)
    if (!same_mpoly(a.gb[i], b.gb[i])) return false;
  return true;
}

Membership membership(const FreeVec &v, const StdBasis &sub) {
  if (!sub.tracked) return membership(v, std_basis(sub.input, sub.ring, sub.rank));
  check_rank(v, sub.rank);
  const RingSpec &ring = sub.ring;
  const RingSpec amb = ring.ambient();
  const std::size_t m = sub.input.size();
  Membership out;
  if (!contains(sub, v)) return out;
  out.member = true;
  if (sub.snf) {
    const SmithForm &s = *sub.snf;
    FreeVec w = s.U.apply(lift(v));
    FreeVec y = zero_vec(amb, sub.ncols);
    for (std::size_t i = 0; i < s.rank; ++i) {
      DivStep d = elem_divstep(w[i], s.diagonal[i]);
      if (!d.remainder.is_zero())
        throw Error(ErrorCode::IllDefined, "membership: inconsistent Smith data");
      y[i] = d.quotient;
    }
    FreeVec x = s.V.apply(y);
    x.resize(m);
    out.coefficients = push(ring, x);
  } else {
    const PolyCtx &ctx = amb.ctx();
    const auto r = static_cast<std::uint32_t>(sub.rank);
    MPoly rem = reduce(to_m(v, ctx), sub.ext, ctx);
    FreeVec c = from_m(rem, ring, m, r);
    for (auto &e : c) e = -e;
    out.coefficients = std::move(c);
  }
  return out;
}

// FPModule

struct FPModule::Cache {
  std::once_flag once;
  std::optional<StdBasis> basis;
};

FPModule::FPModule(RingSpec ring, std::size_t rank, std::vector<FreeVec> relations)
    : ring_(std::move(ring)), rank_(rank), relations_(std::move(relations)),
      cache_(std::make_shared<Cache>()) {
  for (auto &r : relations_) {
    check_rank(r, rank_);
    for (auto &e : r)
      if (!(e.parent() == ring_)) throw Error(ErrorCode::ParentMismatch, "relation over wrong ring");
  }
}

FPModule FPModule::free(const RingSpec &ring, std::size_t rank) { return {ring, rank}; }

FPModule FPModule::zero(const RingSpec &ring) { return {ring, 0}; }

FPModule FPModule::cyclic(const RingSpec &ring, const std::vector<RingElem> &ideal) {
  std::vector<FreeVec> rels;
  for (const auto &g : ideal) rels.push_back(FreeVec{g});
  return {ring, 1, std::move(rels)};
}

const StdBasis &FPModule::basis() const {
  std::call_once(cache_->once, [&] {
    cache_->basis = std_basis(relations_, ring_, rank_, StdBasisOptions{false});
  });
  return *cache_->basis;
}

bool FPModule::is_zero() const {
  for (std::size_t p = 0; p < rank_; ++p)
    if (!contains(basis(), unit_vec(ring_, rank_, p))) return false;
  return true;
}

bool FPModule::is_zero_elem(const FreeVec &v) const { return contains(basis(), v); }

FreeVec FPModule::reduce(const FreeVec &v) const { return normal_form(v, basis()); }

std::string FPModule::str() const {
  std::string s = ring_.description() + "^" + std::to_string(rank_);
  if (relations_.empty()) return s;
  s += " / <";
  for (std::size_t i = 0; i < relations_.size(); ++i)
    s += (i ? ", " : "") + format_vec(relations_[i]);
  return s + ">";
}

bool module_is_zero(const FPModule &M) { return M.is_zero(); }

// ModuleHom

ModuleHom::ModuleHom(FPModule source, FPModule target, Matrix matrix, bool check)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!(source_.ring() == target_.ring()) || !(matrix_.ring() == source_.ring()))
    throw Error(ErrorCode::ParentMismatch, "hom between modules over different rings");
  if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
    throw Error(ErrorCode::ParentMismatch, "hom matrix has the wrong shape");
  if (!check) return;
  for (const auto &r : source_.relations())
    if (!target_.is_zero_elem(matrix_.apply(r)))
      throw Error(ErrorCode::IllDefined, "relation " + format_vec(r) +
                                             " does not map into the target relations");
}

ModuleHom ModuleHom::identity(const FPModule &M) {
  return {M, M, Matrix::identity(M.ring(), M.rank()), false};
}

ModuleHom ModuleHom::zero(const FPModule &source, const FPModule &target) {
  return {source, target, Matrix(source.ring(), target.rank(), source.rank()), false};
}

ModuleHom ModuleHom::scalar(const FPModule &M, const RingElem &a) {
  Matrix m(M.ring(), M.rank(), M.rank());
  for (std::size_t i = 0; i < M.rank(); ++i) m(i, i) = a;
  return {M, M, std::move(m), false};
}

bool ModuleHom::is_zero() const {
  for (std::size_t j = 0; j < matrix_.cols(); ++j)
    if (!target_.is_zero_elem(matrix_.column(j))) return false;
  return true;
}

ModuleHom compose(const ModuleHom &g, const ModuleHom &f) {
  if (f.target().rank() != g.source().rank())
    throw Error(ErrorCode::ParentMismatch, "composition of incompatible homs");
  return {f.source(), g.target(), g.matrix() * f.matrix(), false};
}

bool equal_maps(const ModuleHom &f, const ModuleHom &g) {
  if (f.source().rank() != g.source().rank() || f.target().rank() != g.target().rank())
    return false;
  for (std::size_t j = 0; j < f.matrix().cols(); ++j)
    if (!f.target().is_zero_elem(sub(f.matrix().column(j), g.matrix().column(j))))
      return false;
  return true;
}

namespace {

// x in A^s with F x in span R_N: projections of syzygies of [F | R_N].
std::vector<FreeVec> preimage_of_relations(const ModuleHom &f) {
  const std::size_t s = f.source().rank();
  std::vector<FreeVec> gens = f.matrix().columns();
  const auto &rn = f.target().relations();
  gens.insert(gens.end(), rn.begin(), rn.end());
  StdBasis sb = std_basis(gens, f.source().ring(), f.target().rank());
  std::vector<FreeVec> out;
  for (auto k : sb.syzygies) {
    k.resize(s);
    if (!is_zero(k)) out.push_back(std::move(k));
  }
  // A source without target rank still needs its generators covered.
  if (f.target().rank() == 0)
    for (std::size_t i = 0; i < s; ++i) out.push_back(unit_vec(f.source().ring(), s, i));
  return out;
}

// Keep canonical representatives that are nonzero in M, without repeats.
std::vector<FreeVec> prune(const FPModule &M, const std::vector<FreeVec> &gens) {
  std::vector<FreeVec> out;
  for (const auto &g : gens) {
    FreeVec r = M.reduce(g);
    if (is_zero(r)) continue;
    if (std::find(out.begin(), out.end(), r) != out.end()) continue;
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace

Submodule submodule(const FPModule &M, const std::vector<FreeVec> &gens) {
  const RingSpec &ring = M.ring();
  std::vector<FreeVec> G = prune(M, gens);
  const std::size_t k = G.size();
  std::vector<FreeVec> all = G;
  all.insert(all.end(), M.relations().begin(), M.relations().end());
  StdBasis sb = std_basis(all, ring, M.rank());
  std::vector<FreeVec> rels;
  for (auto s : sb.syzygies) {
    s.resize(k);
    if (!is_zero(s)) rels.push_back(std::move(s));
  }
  std::vector<FreeVec> qrels = M.relations();
  qrels.insert(qrels.end(), G.begin(), G.end());
  return Submodule{G, FPModule(ring, k, std::move(rels)),
                   FPModule(ring, M.rank(), std::move(qrels))};
}

Kernel kernel_hom(const ModuleHom &f) {
  const FPModule &M = f.source();
  Submodule k = submodule(M, preimage_of_relations(f));
  Matrix inc = Matrix::from_columns(M.ring(), M.rank(), k.generators);
  return Kernel{k.module, ModuleHom(k.module, M, std::move(inc), false)};
}

ImageCoker image_coker(const ModuleHom &f) {
  const FPModule &M = f.source();
  const FPModule &N = f.target();
  std::vector<FreeVec> rels = preimage_of_relations(f);
  rels.insert(rels.end(), M.relations().begin(), M.relations().end());
  FPModule image(M.ring(), M.rank(), std::move(rels));
  std::vector<FreeVec> crels = N.relations();
  for (auto c : f.matrix().columns())
    if (!is_zero(c)) crels.push_back(std::move(c));
  FPModule coker(N.ring(), N.rank(), std::move(crels));
  return ImageCoker{image, coker,
                    ModuleHom(N, coker, Matrix::identity(N.ring(), N.rank()), false),
                    ModuleHom(image, N, f.matrix(), false)};
}

bool is_injective(const ModuleHom &f) {
  for (const auto &x : preimage_of_relations(f))
    if (!f.source().is_zero_elem(x)) return false;
  return true;
}

bool is_surjective(const ModuleHom &f) {
  return image_coker(f).cokernel.is_zero();
}

bool is_isomorphism(const ModuleHom &f) { return is_injective(f) && is_surjective(f); }

// Power chains

const StdBasis &PowerChain::level(std::size_t j) const {
  return levels[std::min(j, levels.size() - 1)];
}

PowerChain power_chain(const FPModule &M, const std::vector<RingElem> &a, int depth,
                       bool stop_when_stable) {
  const RingSpec &ring = M.ring();
  const std::size_t r = M.rank();
  PowerChain pc;
  std::vector<FreeVec> g0 = M.relations();
  for (std::size_t p = 0; p < r; ++p) g0.push_back(unit_vec(ring, r, p));
  pc.levels.push_back(std_basis(g0, ring, r, StdBasisOptions{false}));
  for (int j = 1; j <= depth; ++j) {
    const StdBasis &prev = pc.levels.back();
    std::vector<FreeVec> gens = M.relations();
    for (const auto &g : prev.generators)
      for (const auto &ai : a) {
        FreeVec h = scale(ai, g);
        if (!is_zero(h)) gens.push_back(std::move(h));
      }
    StdBasis next = std_basis(gens, ring, r, StdBasisOptions{false});
    bool stable = same_span(prev, next);
    pc.levels.push_back(std::move(next));
    if (stable && !pc.stabilized_at) {
      pc.stabilized_at = j - 1;
      if (stop_when_stable) break;
    }
  }
  return pc;
}

PowerAct ideal_power_act(const std::vector<RingElem> &a, int k, const FPModule &M,
                         int budget) {
  if (k < 0) throw Error(ErrorCode::BudgetExceeded, "negative power");
  if (k > budget)
    throw Error(ErrorCode::BudgetExceeded,
                "power " + std::to_string(k) + " exceeds budget " + std::to_string(budget));
  for (const auto &ai : a)
    if (!(ai.parent() == M.ring())) throw Error(ErrorCode::ParentMismatch, "ideal over wrong ring");
  PowerChain pc = power_chain(M, a, k);
  return PowerAct{submodule(M, pc.level(static_cast<std::size_t>(k)).generators),
                  pc.stabilized_at};
}

// Gradings

std::optional<std::vector<int>> generator_degrees(const FPModule &M) {
  const RingSpec &ring = M.ring();
  if (!ring.graded()) return std::nullopt;
  const std::size_t r = M.rank();
  // Constraint deg(term) + deg_p = D_rel; solve by propagation over the
  // bipartite graph positions <-> relations.
  const std::size_t nrel = M.relations().size();
  std::vector<std::optional<long>> pdeg(r), rdeg(nrel);
  // edges[rel] = list of (position, monomial degree)
  std::vector<std::vector<std::pair<std::size_t, long>>> edges(nrel);
  std::vector<std::vector<std::pair<std::size_t, long>>> back(r);
  for (std::size_t k = 0; k < nrel; ++k)
    for (std::size_t p = 0; p < r; ++p)
      for (const auto &t : M.relations()[k][p].poly()) {
        edges[k].push_back({p, static_cast<long>(t.m.deg)});
        back[p].push_back({k, static_cast<long>(t.m.deg)});
      }
  for (std::size_t start = 0; start < r; ++start) {
    if (pdeg[start]) continue;
    pdeg[start] = 0;
    std::deque<std::pair<bool, std::size_t>> queue{{true, start}};
    while (!queue.empty()) {
      auto [is_pos, idx] = queue.front();
      queue.pop_front();
      if (is_pos) {
        for (auto [k, d] : back[idx]) {
          long want = *pdeg[idx] + d;
          if (!rdeg[k]) {
            rdeg[k] = want;
            queue.push_back({false, k});
          } else if (*rdeg[k] != want) {
            return std::nullopt;
          }
        }
      } else {
        for (auto [p, d] : edges[idx]) {
          long want = *rdeg[idx] - d;
          if (!pdeg[p]) {
            pdeg[p] = want;
            queue.push_back({true, p});
          } else if (*pdeg[p] != want) {
            return std::nullopt;
          }
        }
      }
    }
  }
  std::vector<int> out;
  for (auto &d : pdeg) out.push_back(static_cast<int>(*d));
  return out;
}

// Localization

namespace {

RingElem power_mod(const RingElem &a, Integer e, const RingElem &d) {
  RingElem acc = a.parent().one();
  RingElem base = elem_divstep(a, d).remainder;
  for (; e > 0; --e) acc = elem_divstep(acc * base, d).remainder;
  return acc;
}

} // namespace

bool localization_vanishes(const FPModule &M, const RingElem &a) {
  if (M.rank() == 0 || a.is_zero()) return true;
  const RingSpec &ring = M.ring();
  const RingSpec amb = ring.ambient();
  if (amb.euclidean()) {
    EuclideanStructure es = euclidean_structure(M);
    if (es.free_rank > 0) return false;
    RingElem la = lift(a);
    for (const auto &d : es.torsion) {
      Integer bound = euclidean_size(d);
      if (amb.kind() == RingKind::Integers) bound = mpz_sizeinbase(bound.get_mpz_t(), 2);
      if (!power_mod(la, bound, d).is_zero()) return false;
    }
    return true;
  }
  // Rabinowitsch: M[1/a] = 0 iff M[z] / (1 - a z) M[z] = 0.
  const PolyCtx &base = amb.ctx();
  if (base.nvars + 1 > kMaxVars)
    throw Error(ErrorCode::UnsupportedRing, "too many variables for the localization test");
  PolyCtx ctx = base;
  ctx.nvars = base.nvars + 1;
  const std::size_t r = M.rank();
  std::vector<MPoly> gens;
  for (const auto &rel : M.relations()) gens.push_back(to_m(rel, ctx));
  for (auto &p : ideal_pads(ring, r)) gens.push_back(std::move(p));
  Poly one_minus_az = ctx.sub(ctx.constant(Rational(1)),
                              ctx.mul(lift(a).poly(), ctx.variable(base.nvars)));
  for (std::size_t p = 0; p < r; ++p) {
    MPoly f;
    for (const auto &t : one_minus_az)
      f.push_back(MTerm{static_cast<std::uint32_t>(p), t.m, t.c});
    gens.push_back(std::move(f));
  }
  std::vector<MPoly> gb = groebner_basis(gens, ctx);
  for (std::size_t p = 0; p < r; ++p) {
    MPoly e{MTerm{static_cast<std::uint32_t>(p), Monomial{}, Rational(1)}};
    if (!reduce(e, gb, ctx).empty()) return false;
  }
  return true;
}

EuclideanStructure euclidean_structure(const FPModule &M) {
  const RingSpec &ring = M.ring();
  const RingSpec amb = ring.ambient();
  if (!amb.euclidean())
    throw Error(ErrorCode::UnsupportedRing, "invariant factors over " + ring.description());
  const std::size_t r = M.rank();
  std::vector<FreeVec> cols;
  for (const auto &rel : M.relations()) cols.push_back(lift(rel));
  for (const auto &f : ideal_pads(ring, r)) cols.push_back(from_m(f, amb, r));
  SmithForm s = smith_form(Matrix::from_columns(amb, r, cols));
  EuclideanStructure es;
  es.free_rank = r - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.diagonal[i].is_unit()) continue;
    es.torsion.push_back(s.diagonal[i]);
    es.torsion_generators.push_back(push(ring, s.Uinv.column(i)));
  }
  for (std::size_t i = s.rank; i < r; ++i)
    es.free_generators.push_back(push(ring, s.Uinv.column(i)));
  return es;
}

FPModule direct_sum(const std::vector<FPModule> &parts) {
  if (parts.empty()) throw Error(ErrorCode::ParentMismatch, "empty direct sum");
  const RingSpec &ring = parts.front().ring();
  std::size_t total = 0;
  for (const auto &p : parts) total += p.rank();
  std::vector<FreeVec> rels;
  std::size_t off = 0;
  for (const auto &p : parts) {
    for (const auto &rel : p.relations()) {
      FreeVec v = zero_vec(ring, total);
      for (std::size_t i = 0; i < p.rank(); ++i) v[off + i] = rel[i];
      rels.push_back(std::move(v));
    }
    off += p.rank();
  }
  return {ring, total, std::move(rels)};
}

} // namespace adicomp
