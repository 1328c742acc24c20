#pragma once

// Sparse multivariate polynomials over Z, Q and F_p. This is the untyped
// layer beneath RingElem: no parent tracking, all context passed explicitly.

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace adicomp {

using Integer = mpz_class;
using Rational = mpq_class;

enum class CoeffKind { Integers, Rationals, PrimeField };

/// Coefficient domain of a polynomial ring. Every coefficient is stored as a
/// Rational; over Z and F_p the denominator is always 1, and over F_p the
/// numerator is the least nonnegative residue.
struct CoeffDomain {
  CoeffKind kind = CoeffKind::Integers;
  Integer modulus = 0;

  [[nodiscard]] bool is_field() const { return kind != CoeffKind::Integers; }
  [[nodiscard]] Rational normalize(const Rational &c) const;
  [[nodiscard]] bool is_unit(const Rational &c) const;
  [[nodiscard]] Rational inverse(const Rational &c) const;
  /// Euclidean division a = q*b + r. Over Z the remainder lies in [0, |b|);
  /// over a field it is zero.
  [[nodiscard]] std::pair<Rational, Rational> divmod(const Rational &a,
                                                     const Rational &b) const;
  [[nodiscard]] bool divides(const Rational &b, const Rational &a) const;
  /// Returns (g, s, t) with g = s*a + t*b and g the canonical gcd.
  [[nodiscard]] std::array<Rational, 3> ext_gcd(const Rational &a,
                                                const Rational &b) const;
  /// Unit u such that u*c is the canonical associate of c (positive over Z,
  /// one over a field).
  [[nodiscard]] Rational canonical_unit(const Rational &c) const;

  friend bool operator==(const CoeffDomain &a, const CoeffDomain &b) {
    return a.kind == b.kind && a.modulus == b.modulus;
  }
};

constexpr std::size_t kMaxVars = 8;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  [[nodiscard]] bool is_one() const { return deg == 0; }
  friend bool operator==(const Monomial &a, const Monomial &b) {
    return a.e == b.e;
  }
};

enum class MonoOrder { Lex, GrLex };

/// Three-way comparison under the given order; positive when a > b.
int compare(const Monomial &a, const Monomial &b, MonoOrder order);
Monomial operator*(const Monomial &a, const Monomial &b);
bool divides(const Monomial &a, const Monomial &b);
/// b / a, assuming divides(a, b).
Monomial quotient(const Monomial &b, const Monomial &a);
Monomial lcm(const Monomial &a, const Monomial &b);
Monomial variable_monomial(std::size_t var, std::uint16_t power = 1);

struct Term {
  Monomial m;
  Rational c;
};

/// Terms sorted strictly descending under the ring's monomial order, no zero
/// coefficients.
using Poly = std::vector<Term>;

struct PolyCtx {
  CoeffDomain dom;
  std::size_t nvars = 0;
  MonoOrder order = MonoOrder::GrLex;

  [[nodiscard]] Poly constant(const Rational &c) const;
  [[nodiscard]] Poly variable(std::size_t i) const;
  [[nodiscard]] Poly normalize(std::vector<Term> terms) const;
  [[nodiscard]] Poly add(const Poly &a, const Poly &b) const;
  [[nodiscard]] Poly sub(const Poly &a, const Poly &b) const;
  [[nodiscard]] Poly neg(const Poly &a) const;
  [[nodiscard]] Poly mul(const Poly &a, const Poly &b) const;
  [[nodiscard]] Poly scale(const Poly &a, const Rational &c) const;
  [[nodiscard]] Poly mul_term(const Poly &a, const Rational &c,
                              const Monomial &m) const;
  [[nodiscard]] Poly pow(const Poly &a, unsigned k) const;
  /// a + c*m*b.
  [[nodiscard]] Poly axpy(const Poly &a, const Rational &c, const Monomial &m,
                          const Poly &b) const;
  [[nodiscard]] bool is_homogeneous(const Poly &a) const;

  friend bool operator==(const PolyCtx &a, const PolyCtx &b) {
    return a.dom == b.dom && a.nvars == b.nvars && a.order == b.order;
  }
};

bool operator==(const Term &a, const Term &b);

std::string format_poly(const Poly &p, const std::vector<std::string> &vars);

} // namespace adicomp
