#pragma once

// Brute-force linear algebra over F_p by enumerating every vector. Sizes are
// tiny (p <= 5, rank <= 4), so sets of vectors are stored explicitly.

#include "adicomp/modules.hpp"

#include <set>
#include <vector>

namespace fporacle {

using Vec = std::vector<long>;
using VecSet = std::set<Vec>;

inline long mod(long a, long p) { return ((a % p) + p) % p; }

inline Vec to_vec(const adicomp::FreeVec &v, long p) {
  Vec out;
  for (const auto &e : v)
    out.push_back(e.is_zero() ? 0 : mod(e.poly()[0].c.get_num().get_si(), p));
  return out;
}

inline adicomp::FreeVec from_vec(const Vec &v, const adicomp::RingSpec &ring) {
  adicomp::FreeVec out;
  for (long x : v) out.push_back(ring.from_int(x));
  return out;
}

inline std::vector<Vec> all_vectors(std::size_t n, long p) {
  std::vector<Vec> out{Vec(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto &v : out)
      for (long x = 0; x < p; ++x) {
        Vec w = v;
        w[i] = x;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

inline VecSet span(const std::vector<Vec> &gens, std::size_t n, long p) {
  VecSet s{Vec(n, 0)};
  for (const auto &g : gens) {
    VecSet next;
    for (const auto &v : s)
      for (long c = 0; c < p; ++c) {
        Vec w = v;
        for (std::size_t i = 0; i < n; ++i) w[i] = mod(w[i] + c * g[i], p);
        next.insert(w);
      }
    s = std::move(next);
  }
  return s;
}

inline Vec apply(const std::vector<Vec> &cols, const Vec &x, std::size_t rows, long p) {
  Vec out(rows, 0);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) out[i] = mod(out[i] + cols[j][i] * x[j], p);
  return out;
}

/// Cardinality of F_p^rank / span(relations).
inline std::size_t module_size(const adicomp::FPModule &M, long p) {
  std::vector<Vec> rels;
  for (const auto &r : M.relations()) rels.push_back(to_vec(r, p));
  std::size_t total = 1;
  for (std::size_t i = 0; i < M.rank(); ++i) total *= static_cast<std::size_t>(p);
  return total / span(rels, M.rank(), p).size();
}

inline std::vector<Vec> columns(const adicomp::Matrix &m, long p) {
  std::vector<Vec> out;
  for (const auto &c : m.columns()) out.push_back(to_vec(c, p));
  return out;
}

} // namespace fporacle
