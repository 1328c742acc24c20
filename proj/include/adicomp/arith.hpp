#pragma once

// Computable base rings, their elements, and ring maps out of Z[t_1..t_n].

#include "adicomp/groebner.hpp"
#include "adicomp/poly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adicomp {

enum class RingKind {
  Integers,
  Rationals,
  PrimeField,
  Polynomial,
  Quotient,
  PowerSeries, // K[[t]] modelled by K[t]/(t^N)
};

std::string_view to_string(RingKind k);

/// Parsed-but-unvalidated ring description (mirrors the instance file).
struct RingDescription {
  RingKind kind = RingKind::Integers;
  Integer modulus = 0;                          // PrimeField
  std::shared_ptr<RingDescription> base;        // Polynomial, PowerSeries
  std::vector<std::string> vars;                // Polynomial
  MonoOrder order = MonoOrder::GrLex;           // Polynomial
  std::shared_ptr<RingDescription> ambient;     // Quotient
  std::vector<std::string> ideal;               // Quotient
  std::string var = "t";                        // PowerSeries
  int precision = 0;                            // PowerSeries
};

struct RingData;

class RingElem;

/// A validated computable ring. Cheap to copy; immutable.
class RingSpec {
public:
  static RingSpec integers();
  static RingSpec rationals();
  static RingSpec prime_field(const Integer &p);
  static RingSpec polynomial(const RingSpec &base,
                             std::vector<std::string> vars,
                             MonoOrder order = MonoOrder::GrLex,
                             std::size_t max_vars = 4);
  static RingSpec quotient(const RingSpec &ambient,
                           const std::vector<std::string> &ideal);
  static RingSpec quotient(const RingSpec &ambient,
                           const std::vector<RingElem> &ideal);
  static RingSpec power_series(const RingSpec &field, std::string var,
                               int precision);

  [[nodiscard]] RingKind kind() const;
  [[nodiscard]] const PolyCtx &ctx() const;
  [[nodiscard]] const CoeffDomain &dom() const { return ctx().dom; }
  [[nodiscard]] std::size_t nvars() const { return ctx().nvars; }
  [[nodiscard]] const std::vector<std::string> &vars() const;
  /// Reduced Gröbner basis of the defining ideal (empty unless the ring is a
  /// quotient or power-series model), as polynomials in the ambient.
  [[nodiscard]] const std::vector<Poly> &ideal() const;
  /// Polynomial ring that carries the ideal (this ring for free kinds).
  [[nodiscard]] RingSpec ambient() const;
  [[nodiscard]] int precision() const;
  [[nodiscard]] bool graded() const;
  [[nodiscard]] bool noetherian() const { return true; }
  /// Z, a field, or a univariate polynomial ring over a field.
  [[nodiscard]] bool euclidean() const;
  /// Euclidean after lifting to the ambient polynomial ring.
  [[nodiscard]] bool euclidean_ambient() const;
  [[nodiscard]] std::string description() const;

  [[nodiscard]] RingElem zero() const;
  [[nodiscard]] RingElem one() const;
  [[nodiscard]] RingElem from_int(long v) const;
  [[nodiscard]] RingElem from_rational(const Rational &v) const;
  [[nodiscard]] RingElem variable(std::size_t i) const;
  [[nodiscard]] RingElem make(const Poly &p) const;
  [[nodiscard]] RingElem parse(std::string_view text) const;
  [[nodiscard]] Poly reduce(const Poly &p) const;

  friend bool operator==(const RingSpec &a, const RingSpec &b);

private:
  explicit RingSpec(std::shared_ptr<const RingData> d) : d_(std::move(d)) {}
  std::shared_ptr<const RingData> d_;
};

RingSpec make_ring(const RingDescription &desc, std::size_t max_vars = 4);

class RingElem {
public:
  RingElem() = default;
  RingElem(RingSpec parent, Poly p) : parent_(std::move(parent)), p_(std::move(p)) {}

  [[nodiscard]] const RingSpec &parent() const { return *parent_; }
  [[nodiscard]] bool has_parent() const { return parent_.has_value(); }
  [[nodiscard]] const Poly &poly() const { return p_; }
  [[nodiscard]] bool is_zero() const { return p_.empty(); }
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] bool is_unit() const;
  [[nodiscard]] bool is_homogeneous() const;
  [[nodiscard]] int degree() const; // -1 for zero
  [[nodiscard]] std::string str() const;

  friend RingElem operator+(const RingElem &a, const RingElem &b);
  friend RingElem operator-(const RingElem &a, const RingElem &b);
  friend RingElem operator*(const RingElem &a, const RingElem &b);
  friend RingElem operator-(const RingElem &a);
  friend bool operator==(const RingElem &a, const RingElem &b);
  [[nodiscard]] RingElem pow(unsigned k) const;
  [[nodiscard]] RingElem scale(const Rational &c) const;

private:
  std::optional<RingSpec> parent_;
  Poly p_;
};

enum class ElemOp { Add, Mul, Negate, Scale };

/// Uniform entry point; Negate ignores right, Scale multiplies left by the
/// constant right.
RingElem elem_op(ElemOp op, const RingElem &left, const RingElem &right);

struct DivStep {
  RingElem quotient;
  RingElem remainder;
};

/// Euclidean division over Z, a field, or K[x].
DivStep elem_divstep(const RingElem &a, const RingElem &b);

/// Euclidean size: |a| over Z, degree over K[x], 0/1 over a field; -1 for 0.
Integer euclidean_size(const RingElem &a);

/// Unit u with u*a the canonical associate (positive / monic).
RingElem canonical_unit(const RingElem &a);

/// Ring map Z[t_1..t_n] -> target, t_i -> images[i].
class RingMap {
public:
  RingMap(RingSpec source, RingSpec target, std::vector<RingElem> images);
  [[nodiscard]] const RingSpec &source() const { return source_; }
  [[nodiscard]] const RingSpec &target() const { return target_; }
  [[nodiscard]] const std::vector<RingElem> &images() const { return images_; }

private:
  RingSpec source_;
  RingSpec target_;
  std::vector<RingElem> images_;
};

RingElem apply_ring_map(const RingMap &f, const RingElem &e);

/// Z[names...] with the given order.
RingSpec integer_polynomial_ring(std::vector<std::string> names,
                                 MonoOrder order = MonoOrder::GrLex);

} // namespace adicomp
