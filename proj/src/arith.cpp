#include "adicomp/arith.hpp"

#include "adicomp/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace adicomp {

struct RingData {
  RingKind kind = RingKind::Integers;
  PolyCtx ctx;
  std::vector<std::string> vars;
  std::vector<Poly> ideal;
  std::vector<MPoly> ideal_m;
  int precision = 0;
  bool graded = false;
  std::string description;
  std::shared_ptr<const RingData> ambient; // null for non-quotient kinds
};

std::string_view to_string(RingKind k) {
  switch (k) {
  case RingKind::Integers: return "integers";
  case RingKind::Rationals: return "rationals";
  case RingKind::PrimeField: return "prime_field";
  case RingKind::Polynomial: return "polynomial";
  case RingKind::Quotient: return "quotient";
  case RingKind::PowerSeries: return "power_series";
  }
  return "?";
}

namespace {

std::string base_name(const CoeffDomain &d) {
  switch (d.kind) {
  case CoeffKind::Integers: return "ZZ";
  case CoeffKind::Rationals: return "QQ";
  case CoeffKind::PrimeField: return "GF(" + d.modulus.get_str() + ")";
  }
  return "?";
}

bool valid_identifier(const std::string &s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Recursive-descent parser for the coefficient grammar: integers, p/q,
// variables, ^, *, +, -, parentheses.
class ElemParser {
public:
  ElemParser(const PolyCtx &ctx, const std::vector<std::string> &vars,
             std::string_view text)
      : ctx_(ctx), vars_(vars), s_(normalize_minus(text)) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (i_ != s_.size()) fail("unexpected character '" + std::string(1, s_[i_]) + "'");
    return p;
  }

private:
  static std::string normalize_minus(std::string_view t) {
    std::string out;
    for (std::size_t k = 0; k < t.size(); ++k) {
      // U+2212 MINUS SIGN
      if (k + 2 < t.size() && static_cast<unsigned char>(t[k]) == 0xE2 &&
          static_cast<unsigned char>(t[k + 1]) == 0x88 &&
          static_cast<unsigned char>(t[k + 2]) == 0x92) {
        out.push_back('-');
        k += 2;
      } else {
        out.push_back(t[k]);
      }
    }
    return out;
  }

  [[noreturn]] void fail(const std::string &why) const {
    throw Error(ErrorCode::ParseError,
                "at position " + std::to_string(i_) + " in '" + s_ + "': " + why);
  }
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly acc;
    bool first = true;
    while (true) {
      skip_ws();
      bool negate = false;
      if (first) {
        if (eat('-')) negate = true;
        else eat('+');
      } else if (eat('-')) {
        negate = true;
      } else if (!eat('+')) {
        break;
      }
      Poly t = term();
      acc = negate ? ctx_.sub(acc, t) : ctx_.add(acc, t);
      first = false;
    }
    return acc;
  }
  Poly term() {
    Poly acc = power();
    while (eat('*')) acc = ctx_.mul(acc, power());
    return acc;
  }
  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      skip_ws();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      unsigned long k = std::stoul(s_.substr(st, i_ - st));
      if (k > 4096) fail("exponent too large");
      base = ctx_.pow(base, static_cast<unsigned>(k));
    }
    return base;
  }
  Integer number() {
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return Integer(s_.substr(st, i_ - st));
  }
  Poly atom() {
    skip_ws();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++i_;
      return ctx_.neg(power());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = number();
      Rational v(num);
      skip_ws();
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        skip_ws();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
          fail("expected denominator");
        Integer den = number();
        if (den == 0) fail("zero denominator");
        v = Rational(num, den);
        v.canonicalize();
      }
      try {
        return ctx_.constant(v);
      } catch (const Error &e) {
        fail(e.what());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      std::string name = s_.substr(st, i_ - st);
      for (std::size_t v = 0; v < vars_.size(); ++v)
        if (vars_[v] == name) return ctx_.variable(v);
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const PolyCtx &ctx_;
  const std::vector<std::string> &vars_;
  std::string s_;
  std::size_t i_ = 0;
};

} // namespace

RingSpec RingSpec::integers() {
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::Integers;
  d->ctx.dom = CoeffDomain{CoeffKind::Integers, 0};
  d->description = "ZZ";
  return RingSpec(d);
}

RingSpec RingSpec::rationals() {
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::Rationals;
  d->ctx.dom = CoeffDomain{CoeffKind::Rationals, 0};
  d->description = "QQ";
  return RingSpec(d);
}

RingSpec RingSpec::prime_field(const Integer &p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw Error(ErrorCode::InvalidRing, p.get_str() + " is not prime");
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::PrimeField;
  d->ctx.dom = CoeffDomain{CoeffKind::PrimeField, p};
  d->description = base_name(d->ctx.dom);
  return RingSpec(d);
}

RingSpec RingSpec::polynomial(const RingSpec &base, std::vector<std::string> vars,
                              MonoOrder order, std::size_t max_vars) {
  if (base.nvars() != 0)
    throw Error(ErrorCode::InvalidRing, "polynomial base must be ZZ, QQ or GF(p)");
  if (vars.empty()) throw Error(ErrorCode::InvalidRing, "no variables");
  if (max_vars + 1 > kMaxVars) max_vars = kMaxVars - 1;
  if (vars.size() > max_vars)
    throw Error(ErrorCode::InvalidRing,
                "too many variables (" + std::to_string(vars.size()) + " > " +
                    std::to_string(max_vars) + ")");
  std::set<std::string> seen;
  for (const auto &v : vars) {
    if (!valid_identifier(v))
      throw Error(ErrorCode::InvalidRing, "invalid variable name '" + v + "'");
    if (!seen.insert(v).second)
      throw Error(ErrorCode::InvalidRing, "duplicate variable '" + v + "'");
  }
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::Polynomial;
  d->ctx = PolyCtx{base.dom(), vars.size(), order};
  d->vars = std::move(vars);
  d->graded = true;
  std::string names;
  for (std::size_t i = 0; i < d->vars.size(); ++i)
    names += (i ? "," : "") + d->vars[i];
  d->description = base_name(d->ctx.dom) + "[" + names + "]" +
                   (order == MonoOrder::Lex ? "{lex}" : "{grlex}");
  return RingSpec(d);
}

RingSpec RingSpec::quotient(const RingSpec &ambient,
                            const std::vector<std::string> &ideal) {
  std::vector<RingElem> gens;
  for (const auto &g : ideal) gens.push_back(ambient.parse(g));
  return quotient(ambient, gens);
}

RingSpec RingSpec::quotient(const RingSpec &ambient,
                            const std::vector<RingElem> &ideal) {
  if (ambient.kind() != RingKind::Polynomial)
    throw Error(ErrorCode::InvalidRing, "quotient ambient must be a polynomial ring");
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::Quotient;
  d->ctx = ambient.ctx();
  d->vars = ambient.vars();
  d->ambient = ambient.d_;
  std::vector<MPoly> gens;
  bool homogeneous = true;
  std::string names;
  for (const auto &g : ideal) {
    if (!(g.parent() == ambient))
      throw Error(ErrorCode::ParentMismatch, "ideal generator outside the ambient");
    if (!g.is_zero()) {
      gens.push_back(to_mpoly({g.poly()}, d->ctx));
      homogeneous = homogeneous && d->ctx.is_homogeneous(g.poly());
    }
    names += (names.empty() ? "" : ",") + g.str();
  }
  d->ideal_m = groebner_basis(gens, d->ctx);
  for (const auto &m : d->ideal_m) d->ideal.push_back(from_mpoly(m, 1)[0]);
  if (d->ideal.size() == 1 && d->ideal[0].size() == 1 && d->ideal[0][0].m.is_one() &&
      d->ctx.dom.is_unit(d->ideal[0][0].c))
    throw Error(ErrorCode::InvalidRing, "quotient by the unit ideal");
  d->graded = homogeneous;
  d->description = ambient.description() + "/(" + names + ")";
  return RingSpec(d);
}

RingSpec RingSpec::power_series(const RingSpec &field, std::string var,
                                int precision) {
  if (!(field.kind() == RingKind::Rationals || field.kind() == RingKind::PrimeField))
    throw Error(ErrorCode::InvalidRing, "power series base must be a field");
  if (precision < 1) throw Error(ErrorCode::InvalidRing, "precision must be >= 1");
  RingSpec amb = polynomial(field, {var}, MonoOrder::GrLex);
  RingSpec q = quotient(amb, {amb.variable(0).pow(static_cast<unsigned>(precision))});
  auto d = std::make_shared<RingData>(*q.d_);
  d->kind = RingKind::PowerSeries;
  d->precision = precision;
  d->graded = true;
  d->description = base_name(field.dom()) + "[[" + var + "]]/(" + var + "^" +
                   std::to_string(precision) + ")";
  return RingSpec(d);
}

RingSpec make_ring(const RingDescription &desc, std::size_t max_vars) {
  switch (desc.kind) {
  case RingKind::Integers: return RingSpec::integers();
  case RingKind::Rationals: return RingSpec::rationals();
  case RingKind::PrimeField: return RingSpec::prime_field(desc.modulus);
  case RingKind::Polynomial:
    if (!desc.base) throw Error(ErrorCode::InvalidRing, "polynomial ring without base");
    return RingSpec::polynomial(make_ring(*desc.base, max_vars), desc.vars,
                                desc.order, max_vars);
  case RingKind::Quotient:
    if (!desc.ambient) throw Error(ErrorCode::InvalidRing, "quotient without ambient");
    return RingSpec::quotient(make_ring(*desc.ambient, max_vars), desc.ideal);
  case RingKind::PowerSeries:
    if (!desc.base) throw Error(ErrorCode::InvalidRing, "power series without base");
    return RingSpec::power_series(make_ring(*desc.base, max_vars), desc.var,
                                  desc.precision);
  }
  throw Error(ErrorCode::InvalidRing, "unknown ring kind");
}

RingKind RingSpec::kind() const { return d_->kind; }
const PolyCtx &RingSpec::ctx() const { return d_->ctx; }
const std::vector<std::string> &RingSpec::vars() const { return d_->vars; }
const std::vector<Poly> &RingSpec::ideal() const { return d_->ideal; }
RingSpec RingSpec::ambient() const { return d_->ambient ? RingSpec(d_->ambient) : *this; }
int RingSpec::precision() const { return d_->precision; }
bool RingSpec::graded() const { return d_->graded; }
std::string RingSpec::description() const { return d_->description; }

bool RingSpec::euclidean() const {
  switch (d_->kind) {
  case RingKind::Integers:
  case RingKind::Rationals:
  case RingKind::PrimeField: return true;
  case RingKind::Polynomial: return nvars() == 1 && dom().is_field();
  default: return false;
  }
}

bool RingSpec::euclidean_ambient() const { return ambient().euclidean(); }

RingElem RingSpec::zero() const { return RingElem(*this, {}); }
RingElem RingSpec::one() const { return from_int(1); }
RingElem RingSpec::from_int(long v) const { return from_rational(Rational(v)); }
RingElem RingSpec::from_rational(const Rational &v) const {
  return make(ctx().constant(v));
}
RingElem RingSpec::variable(std::size_t i) const {
  if (i >= nvars()) throw Error(ErrorCode::ParentMismatch, "variable index out of range");
  return make(ctx().variable(i));
}

Poly RingSpec::reduce(const Poly &p) const {
  if (d_->ideal_m.empty()) return p;
  MPoly r = adicomp::reduce(to_mpoly({p}, ctx()), d_->ideal_m, ctx());
  return from_mpoly(r, 1)[0];
}

RingElem RingSpec::make(const Poly &p) const {
  std::vector<Term> terms(p.begin(), p.end());
  return RingElem(*this, reduce(ctx().normalize(std::move(terms))));
}

RingElem RingSpec::parse(std::string_view text) const {
  ElemParser parser(ctx(), vars(), text);
  return RingElem(*this, reduce(parser.parse()));
}

bool operator==(const RingSpec &a, const RingSpec &b) {
  if (a.d_ == b.d_) return true;
  const RingData &x = *a.d_, &y = *b.d_;
  if (x.kind != y.kind || !(x.ctx == y.ctx) || x.vars != y.vars ||
      x.precision != y.precision || x.ideal.size() != y.ideal.size())
    return false;
  for (std::size_t i = 0; i < x.ideal.size(); ++i)
    if (x.ideal[i] != y.ideal[i]) return false;
  return true;
}

namespace {
void check_same(const RingElem &a, const RingElem &b) {
  if (!(a.parent() == b.parent()))
    throw Error(ErrorCode::ParentMismatch,
                a.parent().description() + " vs " + b.parent().description());
}
} // namespace

bool RingElem::is_one() const {
  return p_.size() == 1 && p_[0].m.is_one() && p_[0].c == 1;
}
bool RingElem::is_constant() const { return p_.empty() || (p_.size() == 1 && p_[0].m.is_one()); }

bool RingElem::is_unit() const {
  const RingSpec &r = parent();
  if (is_zero()) return false;
  if (r.kind() == RingKind::PowerSeries) {
    // Invertible iff the constant term is nonzero.
    return p_.back().m.is_one();
  }
  if (is_constant()) return r.dom().is_unit(p_[0].c);
  if (r.kind() == RingKind::Quotient) {
    // Unit iff 1 lies in the ideal generated by this element and the relations.
    std::vector<MPoly> gens{to_mpoly({p_}, r.ctx())};
    for (const auto &g : r.ideal()) gens.push_back(to_mpoly({g}, r.ctx()));
    auto gb = groebner_basis(gens, r.ctx());
    return gb.size() == 1 && gb[0].size() == 1 && gb[0][0].m.is_one() &&
           r.dom().is_unit(gb[0][0].c);
  }
  return false;
}

bool RingElem::is_homogeneous() const {
  return p_.empty() || parent().ctx().is_homogeneous(p_);
}

int RingElem::degree() const {
  int d = -1;
  for (const auto &t : p_) d = std::max(d, static_cast<int>(t.m.deg));
  return d;
}

std::string RingElem::str() const {
  if (!parent_) return "0";
  return format_poly(p_, parent().vars());
}

RingElem operator+(const RingElem &a, const RingElem &b) {
  check_same(a, b);
  return RingElem(a.parent(), a.parent().reduce(a.parent().ctx().add(a.p_, b.p_)));
}
RingElem operator-(const RingElem &a, const RingElem &b) {
  check_same(a, b);
  return RingElem(a.parent(), a.parent().reduce(a.parent().ctx().sub(a.p_, b.p_)));
}
RingElem operator-(const RingElem &a) {
  return RingElem(a.parent(), a.parent().reduce(a.parent().ctx().neg(a.p_)));
}
RingElem operator*(const RingElem &a, const RingElem &b) {
  check_same(a, b);
  const RingSpec &r = a.parent();
  return RingElem(r, r.reduce(r.ctx().mul(a.p_, b.p_)));
}
bool operator==(const RingElem &a, const RingElem &b) {
  if (!a.parent_ || !b.parent_) return a.p_.empty() && b.p_.empty();
  return a.parent() == b.parent() && a.p_ == b.p_;
}

RingElem RingElem::pow(unsigned k) const {
  RingElem r = parent().one();
  RingElem base = *this;
  while (k) {
    if (k & 1U) r = r * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return r;
}

RingElem RingElem::scale(const Rational &c) const {
  return RingElem(parent(), parent().reduce(parent().ctx().scale(p_, c)));
}

RingElem elem_op(ElemOp op, const RingElem &left, const RingElem &right) {
  switch (op) {
  case ElemOp::Add: return left + right;
  case ElemOp::Mul: return left * right;
  case ElemOp::Negate: return -left;
  case ElemOp::Scale:
    check_same(left, right);
    if (!right.is_constant())
      throw Error(ErrorCode::ParentMismatch, "scale by a non-constant");
    return right.is_zero() ? left.parent().zero()
                           : left.scale(right.poly()[0].c);
  }
  throw Error(ErrorCode::ParentMismatch, "unknown op");
}

DivStep elem_divstep(const RingElem &a, const RingElem &b) {
  check_same(a, b);
  const RingSpec &r = a.parent();
  if (!r.euclidean())
    throw Error(ErrorCode::UnsupportedRing, "divstep over " + r.description());
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "divstep by zero");
  const CoeffDomain &dom = r.dom();
  if (r.nvars() == 0) {
    Rational av = a.is_zero() ? Rational(0) : a.poly()[0].c;
    auto [q, rem] = dom.divmod(av, b.poly()[0].c);
    return {r.from_rational(q), r.from_rational(rem)};
  }
  // Univariate long division over a field.
  const PolyCtx &ctx = r.ctx();
  Poly rem = a.poly();
  Poly q;
  const Term &lb = b.poly().front();
  Rational inv = dom.inverse(lb.c);
  while (!rem.empty() && rem.front().m.deg >= lb.m.deg) {
    Monomial shift = quotient(rem.front().m, lb.m);
    Rational c = dom.normalize(rem.front().c * inv);
    q = ctx.add(q, Poly{Term{shift, c}});
    rem = ctx.axpy(rem, -c, shift, b.poly());
  }
  return {RingElem(r, q), RingElem(r, rem)};
}

Integer euclidean_size(const RingElem &a) {
  if (a.is_zero()) return -1;
  const RingSpec &r = a.parent();
  if (r.kind() == RingKind::Integers) return abs(a.poly()[0].c.get_num());
  if (r.nvars() == 0) return 0;
  return a.degree();
}

RingElem canonical_unit(const RingElem &a) {
  const RingSpec &r = a.parent();
  if (a.is_zero()) return r.one();
  return r.from_rational(r.dom().canonical_unit(a.poly().front().c));
}

RingMap::RingMap(RingSpec source, RingSpec target, std::vector<RingElem> images)
    : source_(std::move(source)), target_(std::move(target)),
      images_(std::move(images)) {
  if (source_.kind() != RingKind::Polynomial ||
      source_.dom().kind != CoeffKind::Integers)
    throw Error(ErrorCode::InvalidRing, "ring map source must be ZZ[t...]");
  if (images_.size() != source_.nvars())
    throw Error(ErrorCode::InvalidRing, "one image per source variable required");
  for (const auto &im : images_)
    if (!(im.parent() == target_))
      throw Error(ErrorCode::ParentMismatch, "image outside the target ring");
}

RingElem apply_ring_map(const RingMap &f, const RingElem &e) {
  if (!(e.parent() == f.source()))
    throw Error(ErrorCode::ParentMismatch, "element outside the map's source");
  const RingSpec &t = f.target();
  RingElem acc = t.zero();
  for (const auto &term : e.poly()) {
    RingElem v = t.from_rational(term.c);
    for (std::size_t i = 0; i < f.source().nvars(); ++i)
      if (term.m.e[i]) v = v * f.images()[i].pow(term.m.e[i]);
    acc = acc + v;
  }
  return acc;
}

RingSpec integer_polynomial_ring(std::vector<std::string> names, MonoOrder order) {
  return RingSpec::polynomial(RingSpec::integers(), std::move(names), order, kMaxVars - 1);
}

} // namespace adicomp
