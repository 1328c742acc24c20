#pragma once

// Strong Gröbner bases of submodules of free modules over k[x] and Z[x],
// using the position-over-term extension of the ring's monomial order:
// smaller position index is larger, ties broken by the monomial order.

#include "adicomp/poly.hpp"

#include <cstdint>
#include <vector>

namespace adicomp {

struct MTerm {
  std::uint32_t pos = 0;
  Monomial m;
  Rational c;
};

/// Module element as a POT-descending term list.
using MPoly = std::vector<MTerm>;

int compare(const MTerm &a, const MTerm &b, MonoOrder order);

/// f + c*m*g.
MPoly axpy(const MPoly &f, const Rational &c, const Monomial &m,
           const MPoly &g, const PolyCtx &ctx);

MPoly to_mpoly(const std::vector<Poly> &v, const PolyCtx &ctx,
               std::uint32_t offset = 0);
/// Extracts positions [offset, offset + rank).
std::vector<Poly> from_mpoly(const MPoly &f, std::size_t rank,
                             std::uint32_t offset = 0);

/// Full reduction of f modulo G. Over Z a term c*m is reduced by g whenever
/// LM(g) divides m and the Euclidean quotient of c by LC(g) is nonzero.
MPoly reduce(const MPoly &f, const std::vector<MPoly> &G, const PolyCtx &ctx);

struct GroebnerStats {
  std::size_t pairs = 0;
  std::size_t zero_reductions = 0;
};

/// Reduced strong Gröbner basis of the submodule generated by gens. The
/// result is canonical: independent of the order and redundancy of gens.
std::vector<MPoly> groebner_basis(const std::vector<MPoly> &gens,
                                  const PolyCtx &ctx,
                                  GroebnerStats *stats = nullptr);

} // namespace adicomp
