#include "adicomp/poly.hpp"

#include "adicomp/error.hpp"

#include <algorithm>
#include <sstream>

namespace adicomp {

Rational CoeffDomain::normalize(const Rational &c) const {
  switch (kind) {
  case CoeffKind::Rationals:
    return c;
  case CoeffKind::Integers:
    if (c.get_den() != 1)
      throw Error(ErrorCode::ParentMismatch,
                  "non-integral coefficient " + c.get_str() + " over Z");
    return c;
  case CoeffKind::PrimeField: {
    Integer num = c.get_num() % modulus;
    if (num < 0) num += modulus;
    if (c.get_den() == 1) return Rational(num);
    Integer den = c.get_den() % modulus;
    if (den == 0)
      throw Error(ErrorCode::DivisionByZero,
                  "denominator divisible by the characteristic");
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
    Integer r = (num * inv) % modulus;
    return Rational(r);
  }
  }
  return c;
}

bool CoeffDomain::is_unit(const Rational &c) const {
  if (is_field()) return c != 0;
  return c == 1 || c == -1;
}

Rational CoeffDomain::inverse(const Rational &c) const {
  if (c == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (!is_unit(c))
    throw Error(ErrorCode::DivisionByZero, "non-unit " + c.get_str());
  if (kind == CoeffKind::PrimeField) {
    Integer inv;
    Integer n = c.get_num();
    mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), modulus.get_mpz_t());
    return Rational(inv);
  }
  return Rational(1) / c;
}

std::pair<Rational, Rational> CoeffDomain::divmod(const Rational &a,
                                                  const Rational &b) const {
  if (b == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
  if (is_field()) return {normalize(a * inverse(b)), Rational(0)};
  Integer bb = b.get_num();
  Integer babs = abs(bb);
  Integer q, r;
  Integer an = a.get_num();
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), an.get_mpz_t(), babs.get_mpz_t());
  if (bb < 0) q = -q;
  return {Rational(q), Rational(r)};
}

bool CoeffDomain::divides(const Rational &b, const Rational &a) const {
  if (b == 0) return a == 0;
  if (is_field()) return true;
  return mpz_divisible_p(a.get_num_mpz_t(), b.get_num_mpz_t()) != 0;
}

std::array<Rational, 3> CoeffDomain::ext_gcd(const Rational &a,
                                             const Rational &b) const {
  if (is_field()) {
    if (a != 0) return {Rational(1), inverse(a), Rational(0)};
    if (b != 0) return {Rational(1), Rational(0), inverse(b)};
    return {Rational(0), Rational(0), Rational(0)};
  }
  Integer g, s, t;
  Integer an = a.get_num(), bn = b.get_num();
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), an.get_mpz_t(),
             bn.get_mpz_t());
  return {Rational(g), Rational(s), Rational(t)};
}

Rational CoeffDomain::canonical_unit(const Rational &c) const {
  if (c == 0) return Rational(1);
  if (is_field()) return inverse(c);
  return c < 0 ? Rational(-1) : Rational(1);
}

int compare(const Monomial &a, const Monomial &b, MonoOrder order) {
  if (order == MonoOrder::GrLex && a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  return 0;
}

Monomial operator*(const Monomial &a, const Monomial &b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  r.deg = a.deg + b.deg;
  return r;
}

bool divides(const Monomial &a, const Monomial &b) {
  if (a.deg > b.deg) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Monomial quotient(const Monomial &b, const Monomial &a) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    r.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
  r.deg = b.deg - a.deg;
  return r;
}

Monomial lcm(const Monomial &a, const Monomial &b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

Monomial variable_monomial(std::size_t var, std::uint16_t power) {
  Monomial m;
  m.e[var] = power;
  m.deg = power;
  return m;
}

bool operator==(const Term &a, const Term &b) { return a.m == b.m && a.c == b.c; }

Poly PolyCtx::constant(const Rational &c) const {
  Rational n = dom.normalize(c);
  if (n == 0) return {};
  return {Term{Monomial{}, n}};
}

Poly PolyCtx::variable(std::size_t i) const {
  return {Term{variable_monomial(i), Rational(1)}};
}

Poly PolyCtx::normalize(std::vector<Term> terms) const {
  std::sort(terms.begin(), terms.end(), [&](const Term &a, const Term &b) {
    return compare(a.m, b.m, order) > 0;
  });
  Poly out;
  out.reserve(terms.size());
  for (auto &t : terms) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c += t.c;
    } else {
      if (!out.empty()) {
        out.back().c = dom.normalize(out.back().c);
        if (out.back().c == 0) out.pop_back();
      }
      out.push_back(std::move(t));
    }
  }
  if (!out.empty()) {
    out.back().c = dom.normalize(out.back().c);
    if (out.back().c == 0) out.pop_back();
  }
  return out;
}

Poly PolyCtx::axpy(const Poly &a, const Rational &c, const Monomial &m,
                   const Poly &b) const {
  Poly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial bm = b[j].m * m;
    int cmp = i == a.size() ? -1 : compare(a[i].m, bm, order);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      Rational v = dom.normalize(c * b[j].c);
      if (v != 0) out.push_back(Term{bm, v});
      ++j;
    } else {
      Rational v = dom.normalize(a[i].c + c * b[j].c);
      if (v != 0) out.push_back(Term{bm, v});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly PolyCtx::add(const Poly &a, const Poly &b) const {
  return axpy(a, Rational(1), Monomial{}, b);
}
Poly PolyCtx::sub(const Poly &a, const Poly &b) const {
  return axpy(a, Rational(-1), Monomial{}, b);
}
Poly PolyCtx::neg(const Poly &a) const { return scale(a, Rational(-1)); }

Poly PolyCtx::scale(const Poly &a, const Rational &c) const {
  return mul_term(a, c, Monomial{});
}

Poly PolyCtx::mul_term(const Poly &a, const Rational &c,
                       const Monomial &m) const {
  Poly out;
  out.reserve(a.size());
  for (const auto &t : a) {
    Rational v = dom.normalize(t.c * c);
    if (v != 0) out.push_back(Term{t.m * m, v});
  }
  return out;
}

Poly PolyCtx::mul(const Poly &a, const Poly &b) const {
  if (a.empty() || b.empty()) return {};
  const Poly &small = a.size() <= b.size() ? a : b;
  const Poly &large = a.size() <= b.size() ? b : a;
  Poly acc;
  for (const auto &t : small) acc = axpy(acc, t.c, t.m, large);
  return acc;
}

Poly PolyCtx::pow(const Poly &a, unsigned k) const {
  Poly r = constant(Rational(1));
  Poly base = a;
  while (k) {
    if (k & 1U) r = mul(r, base);
    k >>= 1U;
    if (k) base = mul(base, base);
  }
  return r;
}

bool PolyCtx::is_homogeneous(const Poly &a) const {
  for (const auto &t : a)
    if (t.m.deg != a.front().m.deg) return false;
  return true;
}

std::string format_poly(const Poly &p, const std::vector<std::string> &vars) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &t : p) {
    Rational c = t.c;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (c != 1 || t.m.is_one()) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (t.m.e[i] == 0) continue;
      if (wrote) os << "*";
      os << vars[i];
      if (t.m.e[i] > 1) os << "^" << t.m.e[i];
      wrote = true;
    }
  }
  return os.str();
}

} // namespace adicomp
