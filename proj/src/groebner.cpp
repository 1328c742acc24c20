#include "adicomp/groebner.hpp"

#include <algorithm>
#include <set>
#include <span>

namespace adicomp {

int compare(const MTerm &a, const MTerm &b, MonoOrder order) {
  if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
  return compare(a.m, b.m, order);
}

namespace {

MPoly axpy_span(std::span<const MTerm> f, const Rational &c, const Monomial &m,
                const MPoly &g, const PolyCtx &ctx) {
  MPoly out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(f[i++]);
      continue;
    }
    MTerm gt{g[j].pos, g[j].m * m, Rational(0)};
    int cmp = i == f.size() ? -1 : compare(f[i], gt, ctx.order);
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      gt.c = ctx.dom.normalize(c * g[j].c);
      if (gt.c != 0) out.push_back(std::move(gt));
      ++j;
    } else {
      gt.c = ctx.dom.normalize(f[i].c + c * g[j].c);
      if (gt.c != 0) out.push_back(std::move(gt));
      ++i;
      ++j;
    }
  }
  return out;
}

MPoly scaled(const MPoly &f, const Rational &c, const PolyCtx &ctx) {
  MPoly out;
  out.reserve(f.size());
  for (const auto &t : f) {
    Rational v = ctx.dom.normalize(t.c * c);
    if (v != 0) out.push_back(MTerm{t.pos, t.m, v});
  }
  return out;
}

MPoly make_canonical(const MPoly &f, const PolyCtx &ctx) {
  if (f.empty()) return f;
  Rational u = ctx.dom.canonical_unit(f.front().c);
  return u == 1 ? f : scaled(f, u, ctx);
}

// Index of a reducer for the term t, or -1; q receives the multiplier.
int find_reducer(const MTerm &t, const std::vector<MPoly> &G,
                 const PolyCtx &ctx, Rational &q, std::size_t skip) {
  for (std::size_t k = 0; k < G.size(); ++k) {
    if (k == skip || G[k].empty()) continue;
    const MTerm &lt = G[k].front();
    if (lt.pos != t.pos || !divides(lt.m, t.m)) continue;
    q = ctx.dom.divmod(t.c, lt.c).first;
    if (q != 0) return static_cast<int>(k);
  }
  return -1;
}

MPoly reduce_skip(const MPoly &f, const std::vector<MPoly> &G,
                  const PolyCtx &ctx, std::size_t skip) {
  MPoly result;
  MPoly p = f;
  std::size_t start = 0;
  Rational q;
  while (start < p.size()) {
    const MTerm &t = p[start];
    int k = find_reducer(t, G, ctx, q, skip);
    if (k < 0) {
      result.push_back(t);
      ++start;
      continue;
    }
    const MTerm &lt = G[static_cast<std::size_t>(k)].front();
    Monomial shift = quotient(t.m, lt.m);
    p = axpy_span(std::span<const MTerm>(p).subspan(start), -q, shift,
                  G[static_cast<std::size_t>(k)], ctx);
    start = 0;
  }
  return result;
}

struct Pair {
  std::size_t i, j;
  bool gcd_poly;
  MTerm lcm_term;
};

} // namespace

MPoly axpy(const MPoly &f, const Rational &c, const Monomial &m, const MPoly &g,
           const PolyCtx &ctx) {
  return axpy_span(f, c, m, g, ctx);
}

MPoly to_mpoly(const std::vector<Poly> &v, const PolyCtx &ctx,
               std::uint32_t offset) {
  (void)ctx;
  MPoly out;
  for (std::size_t p = 0; p < v.size(); ++p)
    for (const auto &t : v[p])
      out.push_back(MTerm{static_cast<std::uint32_t>(p) + offset, t.m, t.c});
  return out;
}

std::vector<Poly> from_mpoly(const MPoly &f, std::size_t rank,
                             std::uint32_t offset) {
  std::vector<Poly> out(rank);
  for (const auto &t : f) {
    if (t.pos < offset || t.pos >= offset + rank) continue;
    out[t.pos - offset].push_back(Term{t.m, t.c});
  }
  return out;
}

MPoly reduce(const MPoly &f, const std::vector<MPoly> &G, const PolyCtx &ctx) {
  return reduce_skip(f, G, ctx, static_cast<std::size_t>(-1));
}

std::vector<MPoly> groebner_basis(const std::vector<MPoly> &gens,
                                  const PolyCtx &ctx, GroebnerStats *stats) {
  std::vector<MPoly> G;
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  const bool over_z = !ctx.dom.is_field();

  auto add_element = [&](MPoly h) {
    h = make_canonical(h, ctx);
    std::size_t n = G.size();
    const MTerm &lh = h.front();
    for (std::size_t i = 0; i < n; ++i) {
      if (G[i].empty() || G[i].front().pos != lh.pos) continue;
      const MTerm &li = G[i].front();
      MTerm l{lh.pos, lcm(li.m, lh.m), Rational(0)};
      pairs.push_back(Pair{i, n, false, l});
      pending.insert({i, n});
      if (over_z && !ctx.dom.divides(li.c, lh.c) &&
          !ctx.dom.divides(lh.c, li.c))
        pairs.push_back(Pair{i, n, true, l});
    }
    G.push_back(std::move(h));
  };

  for (const auto &g : gens) {
    MPoly h = reduce(g, G, ctx);
    if (!h.empty()) add_element(std::move(h));
  }

  while (!pairs.empty()) {
    auto it = std::min_element(
        pairs.begin(), pairs.end(), [&](const Pair &a, const Pair &b) {
          int c = compare(a.lcm_term, b.lcm_term, ctx.order);
          if (c != 0) return c < 0;
          return a.gcd_poly < b.gcd_poly;
        });
    Pair pr = *it;
    pairs.erase(it);
    if (!pr.gcd_poly) pending.erase({pr.i, pr.j});
    if (stats) ++stats->pairs;
    const MPoly &f = G[pr.i];
    const MPoly &g = G[pr.j];
    const MTerm &lf = f.front();
    const MTerm &lg = g.front();
    Monomial mf = quotient(pr.lcm_term.m, lf.m);
    Monomial mg = quotient(pr.lcm_term.m, lg.m);

    if (!over_z && !pr.gcd_poly) {
      // Chain criterion: some G[k] with LM dividing the lcm whose pairs with
      // i and j were already treated.
      bool skip = false;
      for (std::size_t k = 0; k < G.size() && !skip; ++k) {
        if (k == pr.i || k == pr.j || G[k].empty()) continue;
        const MTerm &lk = G[k].front();
        if (lk.pos != lf.pos || !divides(lk.m, pr.lcm_term.m)) continue;
        auto key = [](std::size_t a, std::size_t b) {
          return std::pair{std::min(a, b), std::max(a, b)};
        };
        if (!pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k)))
          skip = true;
      }
      if (skip) continue;
    }

    MPoly s;
    if (pr.gcd_poly) {
      auto [gc, sa, tb] = ctx.dom.ext_gcd(lf.c, lg.c);
      s = axpy(s, sa, mf, f, ctx);
      s = axpy(s, tb, mg, g, ctx);
    } else if (over_z) {
      Integer l;
      Integer a = lf.c.get_num(), b = lg.c.get_num();
      mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      s = axpy(s, Rational(l / a), mf, f, ctx);
      s = axpy(s, -Rational(l / b), mg, g, ctx);
    } else {
      s = axpy(s, ctx.dom.inverse(lf.c), mf, f, ctx);
      s = axpy(s, -ctx.dom.inverse(lg.c), mg, g, ctx);
    }
    MPoly h = reduce(s, G, ctx);
    if (h.empty()) {
      if (stats) ++stats->zero_reductions;
      continue;
    }
    add_element(std::move(h));
  }

  // Minimalize.
  std::vector<bool> keep(G.size(), true);
  for (std::size_t i = 0; i < G.size(); ++i) {
    const MTerm &li = G[i].front();
    for (std::size_t j = 0; j < G.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      const MTerm &lj = G[j].front();
      if (lj.pos != li.pos || !divides(lj.m, li.m) ||
          !ctx.dom.divides(lj.c, li.c))
        continue;
      bool same = lj.m == li.m && ctx.dom.divides(li.c, lj.c);
      if (!same || j < i) keep[i] = false;
    }
  }
  std::vector<MPoly> B;
  for (std::size_t i = 0; i < G.size(); ++i)
    if (keep[i]) B.push_back(make_canonical(G[i], ctx));

  // Tail reduction.
  for (std::size_t i = 0; i < B.size(); ++i) {
    MPoly tail(B[i].begin() + 1, B[i].end());
    MPoly red = reduce_skip(tail, B, ctx, i);
    MPoly r;
    r.reserve(red.size() + 1);
    r.push_back(B[i].front());
    r.insert(r.end(), red.begin(), red.end());
    B[i] = std::move(r);
  }
  std::sort(B.begin(), B.end(), [&](const MPoly &a, const MPoly &b) {
    int c = compare(a.front(), b.front(), ctx.order);
    if (c != 0) return c > 0;
    return a.front().c < b.front().c;
  });
  return B;
}

} // namespace adicomp
