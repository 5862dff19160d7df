// Exact coefficient arithmetic: integer polynomials in delta, the fraction
// field Q(delta), finite pointed fields and the reduction map between them.
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tl {

using BigInt = mpz_class;

/// Element of Z[delta]. Index i holds the coefficient of delta^i; no trailing zeros.
class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;
  IntegerPolynomial(long c);  // NOLINT(google-explicit-constructor)
  explicit IntegerPolynomial(std::vector<BigInt> coeffs);

  static IntegerPolynomial monomial(BigInt c, int degree);
  static IntegerPolynomial delta() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& coeff(int i) const;
  const BigInt& leading() const { return coeffs_.back(); }
  int sign() const { return coeffs_.empty() ? 0 : sgn(coeffs_.back()); }

  /// gcd of the coefficients, non-negative; 0 for the zero polynomial.
  BigInt content() const;
  /// p / content(p), leading coefficient kept with its sign.
  IntegerPolynomial primitive() const;
  /// Sum of absolute values of the coefficients.
  BigInt norm1() const;

  IntegerPolynomial operator-() const;
  IntegerPolynomial& operator+=(const IntegerPolynomial& o);
  IntegerPolynomial& operator-=(const IntegerPolynomial& o);
  IntegerPolynomial& operator*=(const IntegerPolynomial& o);
  IntegerPolynomial& operator*=(const BigInt& c);
  friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial& b) { return a += b; }
  friend IntegerPolynomial operator-(IntegerPolynomial a, const IntegerPolynomial& b) { return a -= b; }
  friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend IntegerPolynomial operator*(IntegerPolynomial a, const BigInt& c) { return a *= c; }
  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

  /// Exact division; throws std::domain_error if `d` does not divide *this in Z[delta].
  IntegerPolynomial divexact(const IntegerPolynomial& d) const;
  /// Quotient if `d` divides *this in Z[delta], otherwise empty.
  std::optional<IntegerPolynomial> try_divexact(const IntegerPolynomial& d) const;
  /// Exact division of every coefficient by an integer.
  IntegerPolynomial divexact(const BigInt& c) const;
  /// Pseudo-remainder lc(d)^(deg a - deg d + 1) * a mod d.
  IntegerPolynomial pseudo_remainder(const IntegerPolynomial& d) const;

  /// Value at an integer point.
  BigInt evaluate(const BigInt& x) const;

  /// Human readable, e.g. "δ^4 - 3δ^2 + 1". `var` names the indeterminate.
  std::string to_string(const std::string& var = "δ") const;

  std::size_t hash() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// gcd in Z[delta]: integer content gcd times the primitive gcd, positive leading coefficient.
IntegerPolynomial gcd(const IntegerPolynomial& a, const IntegerPolynomial& b);

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Element of Q(delta) in normal form: gcd(num, den) = 1 in Z[delta], den has positive
/// leading coefficient, zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(IntegerPolynomial p)  // NOLINT(google-explicit-constructor)
      : num_(std::move(p)), den_(1) {}
  RationalFunction(IntegerPolynomial num, IntegerPolynomial den);

  /// Trusts the caller that (num, den) already satisfy the normal form.
  static RationalFunction from_normalized(IntegerPolynomial num, IntegerPolynomial den);

  const IntegerPolynomial& num() const { return num_; }
  const IntegerPolynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RationalFunction operator-() const;
  RationalFunction inverse() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  /// True when the normal-form invariants hold (used by property tests).
  bool is_normalized() const;

  std::string to_string(const std::string& var = "δ") const;

 private:
  void normalize();
  IntegerPolynomial num_;
  IntegerPolynomial den_;
};

enum class ArithOp { add, sub, mul, div };
RationalFunction ratfunc_arith(const RationalFunction& a, const RationalFunction& b, ArithOp op);

/// [n] with [0] = 0, [1] = 1, [n+1] = delta [n] - [n-1].
IntegerPolynomial quantum_int(int n);
/// Quantum binomial [n choose r]; throws std::logic_error if the quotient is not in Z[delta].
IntegerPolynomial quantum_binomial(int n, int r);

class PointedField;

/// Element of F_p[x]/(m(x)). Stored as the base-p code of its reduced representative.
class FieldElement {
 public:
  FieldElement(std::shared_ptr<const PointedField> field, std::uint32_t code)
      : field_(std::move(field)), code_(code) {}

  const PointedField& field() const { return *field_; }
  const std::shared_ptr<const PointedField>& field_ptr() const { return field_; }
  std::uint32_t code() const { return code_; }
  /// Representative polynomial over F_p, low to high, length deg(minpoly).
  std::vector<std::uint32_t> rep() const;
  bool is_zero() const { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  bool operator==(const FieldElement& o) const;

  std::string to_string() const;

 private:
  std::shared_ptr<const PointedField> field_;
  std::uint32_t code_;
};

class InvalidField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// F_p[x]/(m(x)) pointed at the class of x. Build with PointedField::create.
class PointedField : public std::enable_shared_from_this<PointedField> {
  struct Token {};

 public:
  /// `minpoly` low to high; reduced mod p, must be monic and irreducible of degree >= 1.
  static std::shared_ptr<const PointedField> create(std::uint32_t p, std::vector<long> minpoly);

  PointedField(Token, std::uint32_t p, std::vector<std::uint32_t> minpoly);

  std::uint32_t characteristic() const { return p_; }
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  std::uint32_t size() const { return size_; }
  const std::vector<std::uint32_t>& minpoly() const { return minpoly_; }

  FieldElement zero() const { return element(0); }
  FieldElement one() const { return element(1); }
  FieldElement deltabar() const { return element(delta_code_); }
  FieldElement from_integer(const BigInt& v) const { return element(reduce_integer(v)); }
  FieldElement element(std::uint32_t code) const;

  // Arithmetic on codes; used directly by the morphism fast paths.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  /// Throws DivisionByZero for a = 0.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t delta_code() const { return delta_code_; }
  std::uint32_t reduce_integer(const BigInt& v) const;
  /// Image of an integer polynomial under delta -> deltabar.
  std::uint32_t evaluate(const IntegerPolynomial& f) const;

  std::vector<std::uint32_t> decode(std::uint32_t code) const;
  std::uint32_t encode(const std::vector<std::uint32_t>& rep) const;

  bool operator==(const PointedField& o) const { return p_ == o.p_ && minpoly_ == o.minpoly_; }

  /// "F_2[x]/(x)" style label.
  std::string to_string() const;

 private:
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_;
  std::vector<std::uint32_t> minpoly_;
  std::uint32_t size_;
  std::uint32_t delta_code_;
  std::vector<std::uint16_t> mul_table_;  // size_^2 when the field is small
  std::vector<std::uint32_t> inv_table_;
};

/// True iff m (low to high, over F_p) has no factor of degree 1..deg/2.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& m, std::uint32_t p);
bool is_prime(std::uint64_t n);

/// (ell, p) torsion data; p empty means characteristic zero ("infinity").
struct TorsionParams {
  int ell = 2;
  std::optional<std::uint32_t> p;

  static TorsionParams generic(int ell) { return {ell, std::nullopt}; }
  bool operator==(const TorsionParams&) const = default;
  std::string to_string() const;
};

/// Least ell > 0 with [ell](deltabar) = 0.
int detect_ell(const PointedField& k);
TorsionParams torsion_of(const PointedField& k);

/// Raised when a coefficient has a denominator vanishing at deltabar.
class DoesNotDescend : public std::runtime_error {
 public:
  explicit DoesNotDescend(RationalFunction value, std::string context = {});
  const RationalFunction& value() const { return value_; }

 private:
  RationalFunction value_;
};

/// Image of c in k, i.e. num(deltabar) / den(deltabar).
FieldElement reduce_scalar(const RationalFunction& c, const std::shared_ptr<const PointedField>& k);

}  // namespace tl
