#include "adicomp/complexes.hpp"

#include "adicomp/error.hpp"

#include <algorithm>

namespace adicomp {

namespace {

Matrix zero_matrix(const RingSpec &ring, std::size_t rows, std::size_t cols) {
  return Matrix(ring, rows, cols);
}

bool is_free_module(const FPModule &M) {
  for (const auto &r : M.relations())
    if (!is_zero(r)) return false;
  return true;
}

FreeVec combine(const std::vector<FreeVec> &gens, const FreeVec &coeffs,
                const RingSpec &ring, std::size_t rank) {
  FreeVec acc = zero_vec(ring, rank);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!coeffs[i].is_zero()) acc = add(acc, scale(coeffs[i], gens[i]));
  return acc;
}

} // namespace

// BoundedComplex

BoundedComplex::BoundedComplex(RingSpec ring, int lo, std::vector<FPModule> entries,
                               std::vector<Matrix> diffs, bool check)
    : ring_(std::move(ring)), lo_(lo), entries_(std::move(entries)),
      diffs_(std::move(diffs)), zero_(FPModule::zero(ring_)) {
  const std::size_t want = entries_.empty() ? 0 : entries_.size() - 1;
  if (diffs_.size() != want)
    throw Error(ErrorCode::NotAComplex, "need one differential between consecutive entries");
  for (const auto &e : entries_)
    if (!(e.ring() == ring_)) throw Error(ErrorCode::ParentMismatch, "complex entry over wrong ring");
  for (std::size_t k = 0; k < diffs_.size(); ++k) {
    const Matrix &d = diffs_[k];
    if (d.rows() != entries_[k + 1].rank() || d.cols() != entries_[k].rank())
      throw Error(ErrorCode::NotAComplex,
                  "differential in degree " + std::to_string(lo_ + static_cast<int>(k)) +
                      " has the wrong shape");
  }
  if (!check) return;
  for (std::size_t k = 0; k < diffs_.size(); ++k) {
    try {
      (void)ModuleHom(entries_[k], entries_[k + 1], diffs_[k]);
    } catch (const Error &e) {
      throw Error(ErrorCode::NotAComplex, std::string("differential not well defined: ") + e.what());
    }
  }
  for (std::size_t k = 0; k + 1 < diffs_.size(); ++k) {
    Matrix dd = diffs_[k + 1] * diffs_[k];
    for (std::size_t c = 0; c < dd.cols(); ++c)
      if (!entries_[k + 2].is_zero_elem(dd.column(c)))
        throw Error(ErrorCode::NotAComplex,
                    "d o d != 0 at degree " + std::to_string(lo_ + static_cast<int>(k)));
  }
}

BoundedComplex BoundedComplex::zero(const RingSpec &ring) { return {ring, 0, {}, {}}; }

BoundedComplex BoundedComplex::single(const FPModule &M, int degree) {
  return {M.ring(), degree, {M}, {}};
}

BoundedComplex BoundedComplex::two_term(const ModuleHom &f, int degree) {
  return {f.source().ring(), degree, {f.source(), f.target()}, {f.matrix()}};
}

const FPModule &BoundedComplex::entry(int j) const {
  if (j < lo_ || j > hi()) return zero_;
  return entries_[static_cast<std::size_t>(j - lo_)];
}

Matrix BoundedComplex::diff_matrix(int j) const {
  if (j >= lo_ && j < hi()) return diffs_[static_cast<std::size_t>(j - lo_)];
  return Matrix(ring_, entry(j + 1).rank(), entry(j).rank());
}

ModuleHom BoundedComplex::differential(int j) const {
  if (j >= lo_ && j < hi())
    return ModuleHom(entry(j), entry(j + 1), diffs_[static_cast<std::size_t>(j - lo_)], false);
  return ModuleHom::zero(entry(j), entry(j + 1));
}

bool BoundedComplex::is_free() const {
  return std::all_of(entries_.begin(), entries_.end(), is_free_module);
}

std::string BoundedComplex::str() const {
  std::string s;
  for (int j = lo_; j <= hi(); ++j) {
    s += "[" + std::to_string(j) + "] " + entry(j).str();
    if (j < hi()) s += " --" + diff_matrix(j).str() + "--> ";
  }
  return s.empty() ? "0" : s;
}

// Cohomology

std::optional<std::vector<RingElem>> express(const FreeVec &v, const std::vector<FreeVec> &gens,
                                             const FPModule &M) {
  std::vector<FreeVec> all = gens;
  all.insert(all.end(), M.relations().begin(), M.relations().end());
  StdBasis sb = std_basis(all, M.ring(), M.rank());
  Membership m = membership(v, sb);
  if (!m.member) return std::nullopt;
  m.coefficients.resize(gens.size());
  return m.coefficients;
}

CohomologyData cohomology_data(const BoundedComplex &C, int j) {
  const FPModule &E = C.entry(j);
  const RingSpec &ring = C.ring();
  if (E.rank() == 0) return {FPModule::zero(ring), {}};
  Kernel k = kernel_hom(C.differential(j));
  std::vector<FreeVec> cycles = k.inclusion.matrix().columns();
  std::vector<FreeVec> rels = k.module.relations();
  Matrix b = C.diff_matrix(j - 1);
  if (b.cols() > 0 && !cycles.empty()) {
    std::vector<FreeVec> all = cycles;
    all.insert(all.end(), E.relations().begin(), E.relations().end());
    StdBasis sb = std_basis(all, ring, E.rank());
    for (const auto &col : b.columns()) {
      if (is_zero(col)) continue;
      Membership m = membership(col, sb);
      if (!m.member) throw Error(ErrorCode::NotAComplex, "boundary is not a cycle");
      m.coefficients.resize(cycles.size());
      if (!is_zero(m.coefficients)) rels.push_back(std::move(m.coefficients));
    }
  }
  return {FPModule(ring, cycles.size(), std::move(rels)), std::move(cycles)};
}

FPModule cohomology(const BoundedComplex &C, int j) { return cohomology_data(C, j).module; }

std::optional<int> CohomologyRange::amplitude() const {
  if (!inf || !sup) return std::nullopt;
  return *sup - *inf;
}

CohomologyRange cohomology_range(const BoundedComplex &C) {
  CohomologyRange r;
  for (int j = C.lo(); j <= C.hi(); ++j) {
    if (cohomology(C, j).is_zero()) continue;
    if (!r.inf) r.inf = j;
    r.sup = j;
  }
  return r;
}

// Complex maps

ComplexMap::ComplexMap(BoundedComplex source, BoundedComplex target,
                       std::map<int, Matrix> components, bool check)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
  for (const auto &[j, m] : comps_)
    if (m.rows() != target_.entry(j).rank() || m.cols() != source_.entry(j).rank())
      throw Error(ErrorCode::IllDefined, "component in degree " + std::to_string(j) +
                                             " has the wrong shape");
  if (!check) return;
  const int lo = std::min(source_.lo(), target_.lo()) - 1;
  const int hi = std::max(source_.hi(), target_.hi());
  for (int j = lo; j <= hi; ++j) {
    (void)component(j);
    Matrix lhs = target_.diff_matrix(j) * component_matrix(j);
    Matrix rhs = component_matrix(j + 1) * source_.diff_matrix(j);
    for (std::size_t c = 0; c < lhs.cols(); ++c)
      if (!target_.entry(j + 1).is_zero_elem(sub(lhs.column(c), rhs.column(c))))
        throw Error(ErrorCode::IllDefined,
                    "map does not commute with differentials at degree " + std::to_string(j));
  }
}

ComplexMap ComplexMap::identity(const BoundedComplex &C) {
  std::map<int, Matrix> comps;
  for (int j = C.lo(); j <= C.hi(); ++j)
    comps.emplace(j, Matrix::identity(C.ring(), C.entry(j).rank()));
  return ComplexMap(C, C, std::move(comps), false);
}

Matrix ComplexMap::component_matrix(int j) const {
  auto it = comps_.find(j);
  if (it != comps_.end()) return it->second;
  return zero_matrix(source_.ring(), target_.entry(j).rank(), source_.entry(j).rank());
}

ModuleHom ComplexMap::component(int j) const {
  return ModuleHom(source_.entry(j), target_.entry(j), component_matrix(j));
}

ModuleHom induced_map(const ComplexMap &f, int j) {
  CohomologyData hs = cohomology_data(f.source(), j);
  CohomologyData ht = cohomology_data(f.target(), j);
  const RingSpec &ring = f.source().ring();
  Matrix m(ring, ht.module.rank(), hs.module.rank());
  if (!hs.cycles.empty() && !ht.cycles.empty()) {
    const FPModule &T = f.target().entry(j);
    std::vector<FreeVec> all = ht.cycles;
    all.insert(all.end(), T.relations().begin(), T.relations().end());
    StdBasis sb = std_basis(all, ring, T.rank());
    Matrix phi = f.component_matrix(j);
    for (std::size_t c = 0; c < hs.cycles.size(); ++c) {
      Membership mem = membership(phi.apply(hs.cycles[c]), sb);
      if (!mem.member) throw Error(ErrorCode::IllDefined, "chain map does not preserve cycles");
      for (std::size_t r = 0; r < ht.cycles.size(); ++r) m(r, c) = mem.coefficients[r];
    }
  }
  return ModuleHom(hs.module, ht.module, std::move(m), false);
}

Verdict is_quasi_iso(const ComplexMap &f) {
  const int lo = std::min(f.source().lo(), f.target().lo());
  const int hi = std::max(f.source().hi(), f.target().hi());
  for (int j = lo; j <= hi; ++j) {
    ModuleHom h = induced_map(f, j);
    CohomologyData hs = cohomology_data(f.source(), j);
    Kernel k = kernel_hom(h);
    for (const auto &col : k.inclusion.matrix().columns()) {
      if (h.source().is_zero_elem(col)) continue;
      FreeVec w = combine(hs.cycles, col, f.source().ring(), f.source().entry(j).rank());
      return Verdict::fails(Evidence{"kernel", "induced map on cohomology is not injective",
                                     element_strings(w), j, {}});
    }
    ImageCoker ic = image_coker(h);
    if (!ic.cokernel.is_zero()) {
      CohomologyData ht = cohomology_data(f.target(), j);
      for (std::size_t p = 0; p < ic.cokernel.rank(); ++p) {
        FreeVec e = unit_vec(f.source().ring(), ic.cokernel.rank(), p);
        if (ic.cokernel.is_zero_elem(e)) continue;
        return Verdict::fails(Evidence{"cokernel", "induced map on cohomology is not surjective",
                                       element_strings(ht.cycles[p]), j, {}});
      }
    }
  }
  return Verdict::holds(Evidence{"degreewise-iso",
                                 "degrees " + std::to_string(lo) + ".." + std::to_string(hi),
                                 {}, {}, {}});
}

// Truncation

Truncation smart_truncate(const BoundedComplex &C, int j) {
  const RingSpec &ring = C.ring();
  auto ident = [&](int d) { return Matrix::identity(ring, C.entry(d).rank()); };

  // Lower part tau^{<= j-1}.
  std::optional<BoundedComplex> lower;
  std::map<int, Matrix> inc;
  if (C.empty() || j - 1 < C.lo()) {
    lower = BoundedComplex::zero(ring);
  } else if (j - 1 >= C.hi()) {
    lower = C;
    for (int d = C.lo(); d <= C.hi(); ++d) inc.emplace(d, ident(d));
  } else {
    Kernel k = kernel_hom(C.differential(j - 1));
    std::vector<FreeVec> z = k.inclusion.matrix().columns();
    std::vector<FPModule> entries;
    std::vector<Matrix> diffs;
    for (int d = C.lo(); d < j - 1; ++d) {
      entries.push_back(C.entry(d));
      inc.emplace(d, ident(d));
    }
    for (int d = C.lo(); d < j - 2; ++d) diffs.push_back(C.diff_matrix(d));
    if (j - 2 >= C.lo()) {
      Matrix dm(ring, z.size(), C.entry(j - 2).rank());
      std::vector<FreeVec> all = z;
      const FPModule &E = C.entry(j - 1);
      all.insert(all.end(), E.relations().begin(), E.relations().end());
      StdBasis sb = std_basis(all, ring, E.rank());
      Matrix d = C.diff_matrix(j - 2);
      for (std::size_t c = 0; c < d.cols(); ++c) {
        Membership m = membership(d.column(c), sb);
        if (!m.member) throw Error(ErrorCode::NotAComplex, "boundary is not a cycle");
        for (std::size_t r = 0; r < z.size(); ++r) dm(r, c) = m.coefficients[r];
      }
      diffs.push_back(std::move(dm));
    }
    entries.push_back(k.module);
    inc.emplace(j - 1, k.inclusion.matrix());
    lower = BoundedComplex(ring, C.lo(), std::move(entries), std::move(diffs), false);
  }

  // Upper part tau^{>= j}.
  std::optional<BoundedComplex> upper;
  std::map<int, Matrix> proj;
  if (C.empty() || j > C.hi()) {
    upper = BoundedComplex::zero(ring);
  } else if (j <= C.lo()) {
    upper = C;
    for (int d = C.lo(); d <= C.hi(); ++d) proj.emplace(d, ident(d));
  } else {
    std::vector<FPModule> entries;
    std::vector<Matrix> diffs;
    std::vector<FreeVec> rels = C.entry(j).relations();
    for (auto c : C.diff_matrix(j - 1).columns())
      if (!is_zero(c)) rels.push_back(std::move(c));
    entries.emplace_back(ring, C.entry(j).rank(), std::move(rels));
    proj.emplace(j, ident(j));
    for (int d = j + 1; d <= C.hi(); ++d) {
      entries.push_back(C.entry(d));
      proj.emplace(d, ident(d));
    }
    for (int d = j; d < C.hi(); ++d) diffs.push_back(C.diff_matrix(d));
    upper = BoundedComplex(ring, j, std::move(entries), std::move(diffs), false);
  }

  ComplexMap i(*lower, C, std::move(inc), false);
  ComplexMap p(C, *upper, std::move(proj), false);
  return Truncation{*lower, *upper, std::move(i), std::move(p)};
}

// Hom and tensor

namespace {

void require_free(const BoundedComplex &F) {
  if (!F.is_free()) throw Error(ErrorCode::NotFree, "complex has a non-free entry");
}

// Block layout of Hom(F, C)^n = prod_p Hom(F^p, C^{p+n}).
struct HomBlock {
  int p;
  std::size_t offset, copies, width; // copies = rank F^p, width = rank C^{p+n}
};

std::vector<HomBlock> hom_layout(const BoundedComplex &F, const BoundedComplex &C, int n,
                                 std::size_t &total) {
  std::vector<HomBlock> out;
  total = 0;
  for (int p = F.lo(); p <= F.hi(); ++p) {
    std::size_t copies = F.entry(p).rank(), width = C.entry(p + n).rank();
    if (copies == 0 || width == 0) continue;
    out.push_back(HomBlock{p, total, copies, width});
    total += copies * width;
  }
  return out;
}

const HomBlock *find_block(const std::vector<HomBlock> &bs, int p) {
  for (const auto &b : bs)
    if (b.p == p) return &b;
  return nullptr;
}

} // namespace

BoundedComplex hom_complex(const BoundedComplex &F, const BoundedComplex &C) {
  require_free(F);
  const RingSpec &ring = C.ring();
  if (F.empty() || C.empty()) return BoundedComplex::zero(ring);
  const int nlo = C.lo() - F.hi(), nhi = C.hi() - F.lo();
  std::vector<FPModule> entries;
  std::vector<std::vector<HomBlock>> layouts;
  std::vector<std::size_t> totals;
  for (int n = nlo; n <= nhi; ++n) {
    std::size_t total = 0;
    auto bs = hom_layout(F, C, n, total);
    std::vector<FreeVec> rels;
    for (const auto &b : bs) {
      const FPModule &E = C.entry(b.p + n);
      for (std::size_t c = 0; c < b.copies; ++c)
        for (const auto &r : E.relations()) {
          FreeVec v = zero_vec(ring, total);
          for (std::size_t k = 0; k < b.width; ++k) v[b.offset + c * b.width + k] = r[k];
          rels.push_back(std::move(v));
        }
    }
    entries.emplace_back(ring, total, std::move(rels));
    layouts.push_back(std::move(bs));
    totals.push_back(total);
  }
  std::vector<Matrix> diffs;
  for (int n = nlo; n < nhi; ++n) {
    const auto &src = layouts[static_cast<std::size_t>(n - nlo)];
    const auto &dst = layouts[static_cast<std::size_t>(n + 1 - nlo)];
    Matrix D(ring, totals[static_cast<std::size_t>(n + 1 - nlo)],
             totals[static_cast<std::size_t>(n - nlo)]);
    const RingElem sign = (n % 2 == 0) ? ring.from_int(-1) : ring.one(); // -(-1)^n
    for (const auto &b : src) {
      const int q = b.p + n;
      // d_C o f.
      if (const HomBlock *t = find_block(dst, b.p)) {
        const Matrix &dc = C.diff_matrix(q);
        if (dc.rows() == t->width && dc.cols() == b.width)
          for (std::size_t c = 0; c < b.copies; ++c)
            for (std::size_t k2 = 0; k2 < t->width; ++k2)
              for (std::size_t k = 0; k < b.width; ++k)
                if (!dc(k2, k).is_zero())
                  D(t->offset + c * t->width + k2, b.offset + c * b.width + k) = dc(k2, k);
      }
      // -(-1)^n f o d_F, landing in Hom(F^{p-1}, C^q).
      if (const HomBlock *t = find_block(dst, b.p - 1)) {
        const Matrix &df = F.diff_matrix(b.p - 1); // rank F^p x rank F^{p-1}
        if (df.rows() == b.copies && df.cols() == t->copies)
          for (std::size_t a = 0; a < b.copies; ++a)
            for (std::size_t bb = 0; bb < t->copies; ++bb) {
              if (df(a, bb).is_zero()) continue;
              RingElem v = sign * df(a, bb);
              for (std::size_t k = 0; k < b.width; ++k)
                D(t->offset + bb * t->width + k, b.offset + a * b.width + k) =
                    D(t->offset + bb * t->width + k, b.offset + a * b.width + k) + v;
            }
      }
    }
    diffs.push_back(std::move(D));
  }
  return BoundedComplex(ring, nlo, std::move(entries), std::move(diffs), false);
}

BoundedComplex hom_complex(const BoundedComplex &F, const FPModule &M) {
  return hom_complex(F, BoundedComplex::single(M, 0));
}

ComplexMap hom_precompose(const ComplexMap &u, const BoundedComplex &C) {
  const BoundedComplex &F = u.source();
  const BoundedComplex &G = u.target();
  BoundedComplex HG = hom_complex(G, C);
  BoundedComplex HF = hom_complex(F, C);
  const RingSpec &ring = C.ring();
  std::map<int, Matrix> comps;
  for (int n = HG.lo(); n <= HG.hi(); ++n) {
    std::size_t tg = 0, tf = 0;
    auto bg = hom_layout(G, C, n, tg);
    auto bf = hom_layout(F, C, n, tf);
    if (HF.entry(n).rank() != tf || HG.entry(n).rank() != tg) continue;
    Matrix m(ring, tf, tg);
    for (const auto &b : bg) {
      const HomBlock *t = find_block(bf, b.p);
      if (!t) continue;
      Matrix up = u.component_matrix(b.p); // rank G^p x rank F^p
      for (std::size_t a = 0; a < b.copies; ++a)
        for (std::size_t bb = 0; bb < t->copies; ++bb) {
          if (up(a, bb).is_zero()) continue;
          for (std::size_t k = 0; k < b.width; ++k)
            m(t->offset + bb * t->width + k, b.offset + a * b.width + k) = up(a, bb);
        }
    }
    comps.emplace(n, std::move(m));
  }
  return ComplexMap(HG, HF, std::move(comps), false);
}

BoundedComplex tensor_complex(const BoundedComplex &F, const BoundedComplex &G) {
  require_free(F);
  require_free(G);
  const RingSpec &ring = F.ring();
  if (F.empty() || G.empty()) return BoundedComplex::zero(ring);
  const int nlo = F.lo() + G.lo(), nhi = F.hi() + G.hi();
  // offsets[n][p] for block F^p (x) G^{n-p}.
  std::vector<std::map<int, std::size_t>> offsets;
  std::vector<std::size_t> totals;
  std::vector<FPModule> entries;
  for (int n = nlo; n <= nhi; ++n) {
    std::map<int, std::size_t> off;
    std::size_t total = 0;
    for (int p = F.lo(); p <= F.hi(); ++p) {
      off[p] = total;
      total += F.entry(p).rank() * G.entry(n - p).rank();
    }
    offsets.push_back(std::move(off));
    totals.push_back(total);
    entries.push_back(FPModule::free(ring, total));
  }
  std::vector<Matrix> diffs;
  for (int n = nlo; n < nhi; ++n) {
    const auto &so = offsets[static_cast<std::size_t>(n - nlo)];
    const auto &to = offsets[static_cast<std::size_t>(n + 1 - nlo)];
    Matrix D(ring, totals[static_cast<std::size_t>(n + 1 - nlo)],
             totals[static_cast<std::size_t>(n - nlo)]);
    for (int p = F.lo(); p <= F.hi(); ++p) {
      const int q = n - p;
      const std::size_t r = F.entry(p).rank(), s = G.entry(q).rank();
      if (r == 0 || s == 0) continue;
      const std::size_t base = so.at(p);
      if (p + 1 <= F.hi()) {
        const Matrix &df = F.diff_matrix(p);
        const std::size_t r2 = F.entry(p + 1).rank();
        const std::size_t tb = to.at(p + 1);
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t a2 = 0; a2 < r2; ++a2) {
            if (df(a2, a).is_zero()) continue;
            for (std::size_t b = 0; b < s; ++b) D(tb + a2 * s + b, base + a * s + b) = df(a2, a);
          }
      }
      if (q + 1 <= G.hi() && q >= G.lo()) {
        const Matrix &dg = G.diff_matrix(q);
        const std::size_t s2 = G.entry(q + 1).rank();
        const std::size_t tb = to.at(p);
        const bool neg = (p % 2) != 0;
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < s; ++b)
            for (std::size_t b2 = 0; b2 < s2; ++b2) {
              if (dg(b2, b).is_zero()) continue;
              D(tb + a * s2 + b2, base + a * s + b) = neg ? -dg(b2, b) : dg(b2, b);
            }
      }
    }
    diffs.push_back(std::move(D));
  }
  return BoundedComplex(ring, nlo, std::move(entries), std::move(diffs), false);
}

namespace {

// Offset of block F^p (x) G^{n-p} inside degree n of the tensor complex.
std::size_t tensor_offset(const BoundedComplex &F, const BoundedComplex &G, int n, int p) {
  std::size_t off = 0;
  for (int q = F.lo(); q < p; ++q) off += F.entry(q).rank() * G.entry(n - q).rank();
  return off;
}

} // namespace

ComplexMap tensor_map(const ComplexMap &f, const ComplexMap &g) {
  const BoundedComplex &Fs = f.source(), &Ft = f.target();
  const BoundedComplex &Gs = g.source(), &Gt = g.target();
  BoundedComplex S = tensor_complex(Fs, Gs);
  BoundedComplex T = tensor_complex(Ft, Gt);
  const RingSpec &ring = Fs.ring();
  std::map<int, Matrix> comps;
  if (S.empty() || T.empty()) return ComplexMap(S, T, {}, false);
  for (int n = S.lo(); n <= S.hi(); ++n) {
    if (n < T.lo() || n > T.hi()) continue;
    Matrix m(ring, T.entry(n).rank(), S.entry(n).rank());
    for (int p = Fs.lo(); p <= Fs.hi(); ++p) {
      if (p < Ft.lo() || p > Ft.hi()) continue;
      const int q = n - p;
      Matrix fp = f.component_matrix(p), gq = g.component_matrix(q);
      const std::size_t sr = Fs.entry(p).rank(), ss = Gs.entry(q).rank();
      const std::size_t tr = Ft.entry(p).rank(), ts = Gt.entry(q).rank();
      if (!sr || !ss || !tr || !ts) continue;
      const std::size_t so = tensor_offset(Fs, Gs, n, p), to = tensor_offset(Ft, Gt, n, p);
      for (std::size_t a = 0; a < sr; ++a)
        for (std::size_t a2 = 0; a2 < tr; ++a2) {
          if (fp(a2, a).is_zero()) continue;
          for (std::size_t b = 0; b < ss; ++b)
            for (std::size_t b2 = 0; b2 < ts; ++b2)
              if (!gq(b2, b).is_zero())
                m(to + a2 * ts + b2, so + a * ss + b) = fp(a2, a) * gq(b2, b);
        }
    }
    comps.emplace(n, std::move(m));
  }
  return ComplexMap(S, T, std::move(comps));
}

BoundedComplex shift(const BoundedComplex &C, int k) {
  std::vector<FPModule> entries;
  std::vector<Matrix> diffs;
  for (int j = C.lo(); j <= C.hi(); ++j) entries.push_back(C.entry(j));
  const bool neg = (k % 2) != 0;
  for (int j = C.lo(); j < C.hi(); ++j) {
    Matrix d = C.diff_matrix(j);
    if (neg)
      for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = 0; c < d.cols(); ++c) d(r, c) = -d(r, c);
    diffs.push_back(std::move(d));
  }
  if (C.empty()) return C;
  return BoundedComplex(C.ring(), C.lo() - k, std::move(entries), std::move(diffs), false);
}

ComplexMap shift_map(const ComplexMap &f, int k) {
  BoundedComplex S = shift(f.source(), k), T = shift(f.target(), k);
  std::map<int, Matrix> comps;
  if (!S.empty())
    for (int j = S.lo(); j <= S.hi(); ++j) comps.emplace(j, f.component_matrix(j + k));
  return ComplexMap(S, T, std::move(comps), false);
}

BoundedComplex cone(const ComplexMap &f) {
  const BoundedComplex &C = f.source();
  const BoundedComplex &D = f.target();
  const RingSpec &ring = C.ring();
  if (C.empty() && D.empty()) return BoundedComplex::zero(ring);
  int lo = D.empty() ? C.lo() - 1 : D.lo();
  int hi = D.empty() ? C.hi() - 1 : D.hi();
  if (!C.empty()) {
    lo = std::min(lo, C.lo() - 1);
    hi = std::max(hi, C.hi() - 1);
  }
  std::vector<FPModule> entries;
  for (int n = lo; n <= hi; ++n) entries.push_back(direct_sum({C.entry(n + 1), D.entry(n)}));
  std::vector<Matrix> diffs;
  for (int n = lo; n < hi; ++n) {
    const std::size_t c0 = C.entry(n + 1).rank(), d0 = D.entry(n).rank();
    const std::size_t c1 = C.entry(n + 2).rank(), d1 = D.entry(n + 1).rank();
    Matrix M(ring, c1 + d1, c0 + d0);
    const Matrix &dc = C.diff_matrix(n + 1);
    if (dc.rows() == c1 && dc.cols() == c0)
      for (std::size_t r = 0; r < c1; ++r)
        for (std::size_t c = 0; c < c0; ++c) M(r, c) = -dc(r, c);
    Matrix fm = f.component_matrix(n + 1);
    for (std::size_t r = 0; r < d1; ++r)
      for (std::size_t c = 0; c < c0; ++c) M(c1 + r, c) = fm(r, c);
    const Matrix &dd = D.diff_matrix(n);
    if (dd.rows() == d1 && dd.cols() == d0)
      for (std::size_t r = 0; r < d1; ++r)
        for (std::size_t c = 0; c < d0; ++c) M(c1 + r, c0 + c) = dd(r, c);
    diffs.push_back(std::move(M));
  }
  return BoundedComplex(ring, lo, std::move(entries), std::move(diffs), false);
}

} // namespace adicomp
