#include "tl/ring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <utility>

namespace tl {

// ---------------------------------------------------------------------------
// IntegerPolynomial

IntegerPolynomial::IntegerPolynomial(long c) {
  if (c != 0) coeffs_.emplace_back(c);
}

IntegerPolynomial::IntegerPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntegerPolynomial IntegerPolynomial::monomial(BigInt c, int degree) {
  std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1);
  v.back() = std::move(c);
  return IntegerPolynomial(std::move(v));
}

void IntegerPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& IntegerPolynomial::coeff(int i) const {
  static const BigInt kZero = 0;
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<std::size_t>(i)];
}

BigInt IntegerPolynomial::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntegerPolynomial IntegerPolynomial::primitive() const {
  if (is_zero()) return {};
  BigInt g = content();
  if (g == 1) return *this;
  return divexact(g);
}

BigInt IntegerPolynomial::norm1() const {
  BigInt s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

IntegerPolynomial IntegerPolynomial::operator-() const {
  IntegerPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntegerPolynomial& IntegerPolynomial::operator+=(const IntegerPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator-=(const IntegerPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntegerPolynomial(std::move(r));
}

IntegerPolynomial& IntegerPolynomial::operator*=(const IntegerPolynomial& o) { return *this = *this * o; }

IntegerPolynomial& IntegerPolynomial::operator*=(const BigInt& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

IntegerPolynomial IntegerPolynomial::divexact(const BigInt& c) const {
  IntegerPolynomial r = *this;
  for (auto& x : r.coeffs_) {
    if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) throw std::domain_error("inexact integer division");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

IntegerPolynomial IntegerPolynomial::divexact(const IntegerPolynomial& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  auto q = try_divexact(d);
  if (!q) throw std::domain_error("inexact polynomial division");
  return std::move(*q);
}

std::optional<IntegerPolynomial> IntegerPolynomial::try_divexact(const IntegerPolynomial& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return IntegerPolynomial();
  if (degree() < d.degree()) return std::nullopt;
  const int dd = d.degree();
  const BigInt& lc = d.coeffs_.back();
  // Cheap rejections: constant terms and leading coefficients must divide.
  if (!mpz_divisible_p(coeffs_.back().get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
  if (d.coeffs_[0] != 0 && !mpz_divisible_p(coeffs_[0].get_mpz_t(), d.coeffs_[0].get_mpz_t())) return std::nullopt;
  std::vector<BigInt> rem = coeffs_;
  std::vector<BigInt> q(static_cast<std::size_t>(degree() - dd) + 1);
  BigInt t;
  for (int i = degree(); i >= dd; --i) {
    auto& top = rem[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (int j = 0; j <= dd; ++j) {
      mpz_submul(rem[static_cast<std::size_t>(i - dd + j)].get_mpz_t(), t.get_mpz_t(),
                 d.coeffs_[static_cast<std::size_t>(j)].get_mpz_t());
    }
    q[static_cast<std::size_t>(i - dd)] = t;
  }
  for (int i = 0; i < dd; ++i) {
    if (rem[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  }
  return IntegerPolynomial(std::move(q));
}

IntegerPolynomial IntegerPolynomial::pseudo_remainder(const IntegerPolynomial& d) const {
  if (d.is_zero()) throw DivisionByZero("pseudo-remainder by zero");
  std::vector<BigInt> rem = coeffs_;
  const int dd = d.degree();
  const BigInt& lc = d.coeffs_.back();
  int steps = degree() - dd + 1;
  for (int i = degree(); i >= dd; --i) {
    BigInt top = rem[static_cast<std::size_t>(i)];
    for (auto& x : rem) x *= lc;
    --steps;
    if (top != 0) {
      for (int j = 0; j <= dd; ++j) {
        mpz_submul(rem[static_cast<std::size_t>(i - dd + j)].get_mpz_t(), top.get_mpz_t(),
                   d.coeffs_[static_cast<std::size_t>(j)].get_mpz_t());
      }
    }
    rem.resize(static_cast<std::size_t>(i));
  }
  IntegerPolynomial r(std::move(rem));
  if (steps > 0) {
    BigInt f;
    mpz_pow_ui(f.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(steps));
    r *= f;
  }
  return r;
}

BigInt IntegerPolynomial::evaluate(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

std::string IntegerPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::size_t IntegerPolynomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ coeffs_.size();
  for (const auto& c : coeffs_) {
    std::size_t v = mpz_size(c.get_mpz_t()) ? mpz_getlimbn(c.get_mpz_t(), 0) : 0;
    v ^= static_cast<std::size_t>(sgn(c) + 1) << 61;
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

// Primitive gcd of two primitive polynomials, via the primitive remainder sequence.
IntegerPolynomial primitive_gcd_prs(IntegerPolynomial a, IntegerPolynomial b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return IntegerPolynomial(1);
    IntegerPolynomial r = a.pseudo_remainder(b);
    a = std::move(b);
    b = r.primitive();
  }
  return a;
}

BigInt max_norm(const IntegerPolynomial& p) {
  BigInt m = 0;
  for (const auto& c : p.coeffs()) {
    if (mpz_cmpabs(c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(c);
  }
  return m;
}

// Heuristic gcd: evaluate at a large integer, take the integer gcd and read the
// digits back. A candidate that divides both inputs is the gcd.
std::optional<IntegerPolynomial> heuristic_gcd(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  BigInt xi = 2 * std::min(max_norm(a), max_norm(b)) + 2;
  const std::size_t max_bits = 1 << 20;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1) > max_bits) {
      break;
    }
    BigInt g;
    BigInt va = a.evaluate(xi);
    BigInt vb = b.evaluate(xi);
    mpz_gcd(g.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    std::vector<BigInt> digits;
    BigInt half = xi / 2;
    while (g != 0) {
      BigInt d;
      mpz_fdiv_r(d.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
      if (d > half) d -= xi;
      digits.push_back(d);
      g -= d;
      mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
    }
    IntegerPolynomial cand = IntegerPolynomial(std::move(digits)).primitive();
    if (cand.sign() < 0) cand = -cand;
    if (!cand.is_zero() && a.try_divexact(cand) && b.try_divexact(cand)) return cand;
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

IntegerPolynomial primitive_gcd(IntegerPolynomial a, IntegerPolynomial b) {
  if (auto g = heuristic_gcd(a, b)) return std::move(*g);
  return primitive_gcd_prs(std::move(a), std::move(b));
}

}  // namespace

IntegerPolynomial gcd(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero()) return b.sign() < 0 ? -b : b;
  if (b.is_zero()) return a.sign() < 0 ? -a : a;
  BigInt ca = a.content();
  BigInt cb = b.content();
  BigInt c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntegerPolynomial g;
  if (a.degree() == 0 || b.degree() == 0) {
    g = IntegerPolynomial(1);
  } else {
    IntegerPolynomial pa = a.divexact(ca);
    IntegerPolynomial pb = b.divexact(cb);
    if (pa == pb || pa == -pb) {
      g = pa;
    } else {
      g = primitive_gcd(std::move(pa), std::move(pb));
    }
  }
  if (g.sign() < 0) g = -g;
  return g * c;
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(IntegerPolynomial num, IntegerPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  normalize();
}

RationalFunction RationalFunction::from_normalized(IntegerPolynomial num, IntegerPolynomial den) {
  RationalFunction r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = IntegerPolynomial(1);
    return;
  }
  if (!den_.is_one()) {
    IntegerPolynomial g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.divexact(g);
      den_ = den_.divexact(g);
    }
  }
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

bool RationalFunction::is_normalized() const {
  if (den_.is_zero() || den_.sign() <= 0) return false;
  if (num_.is_zero()) return den_.is_one();
  return gcd(num_, den_).is_one();
}

RationalFunction RationalFunction::operator-() const { return from_normalized(-num_, den_); }

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(delta)");
  if (num_.sign() < 0) return from_normalized(-den_, -num_);
  return from_normalized(den_, num_);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  IntegerPolynomial g = gcd(den_, o.den_);
  if (g.is_one()) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    // gcd(num, den) = 1 is automatic here.
    if (num_.is_zero()) den_ = IntegerPolynomial(1);
    return *this;
  }
  IntegerPolynomial d1 = den_.divexact(g);
  IntegerPolynomial d2 = o.den_.divexact(g);
  num_ = num_ * d2 + o.num_ * d1;
  den_ = d1 * o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();
  IntegerPolynomial g1 = gcd(num_, o.den_);
  IntegerPolynomial g2 = gcd(o.num_, den_);
  IntegerPolynomial n1 = g1.is_one() ? num_ : num_.divexact(g1);
  IntegerPolynomial d2 = g1.is_one() ? o.den_ : o.den_.divexact(g1);
  IntegerPolynomial n2 = g2.is_one() ? o.num_ : o.num_.divexact(g2);
  IntegerPolynomial d1 = g2.is_one() ? den_ : den_.divexact(g2);
  num_ = n1 * n2;
  den_ = d1 * d2;
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

std::string RationalFunction::to_string(const std::string& var) const {
  if (den_.is_one()) return num_.to_string(var);
  auto wrap = [&](const IntegerPolynomial& p) {
    std::string s = p.to_string(var);
    bool simple = p.coeffs().size() <= 1 ||
                  std::count_if(p.coeffs().begin(), p.coeffs().end(), [](const BigInt& c) { return c != 0; }) == 1;
    return simple ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

RationalFunction ratfunc_arith(const RationalFunction& a, const RationalFunction& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::div:
      return a / b;
  }
  throw std::logic_error("unknown arithmetic op");
}

IntegerPolynomial quantum_int(int n) {
  if (n < 0) throw std::invalid_argument("quantum_int requires n >= 0");
  IntegerPolynomial prev(0);
  IntegerPolynomial cur(1);
  if (n == 0) return prev;
  const IntegerPolynomial d = IntegerPolynomial::delta();
  for (int i = 1; i < n; ++i) {
    IntegerPolynomial next = d * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

IntegerPolynomial quantum_binomial(int n, int r) {
  if (r < 0 || r > n) throw std::invalid_argument("quantum_binomial requires 0 <= r <= n");
  RationalFunction acc(1);
  for (int j = 1; j <= r; ++j) acc *= RationalFunction(quantum_int(n - r + j), quantum_int(j));
  if (!acc.is_polynomial()) throw std::logic_error("quantum binomial is not a polynomial");
  return acc.num();
}

// ---------------------------------------------------------------------------
// Finite pointed fields

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

using ModPoly = std::vector<std::uint32_t>;

void trim_mod(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo monic-or-not b over F_p (b nonzero).
ModPoly mod_poly_rem(ModPoly a, const ModPoly& b, std::uint32_t p) {
  trim_mod(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t inv_lc = pow_mod(b.back(), p - 2, p);
  while (a.size() > db) {
    std::uint64_t f = static_cast<std::uint64_t>(a.back()) * inv_lc % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) {
      std::uint64_t sub = f * b[j] % p;
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
    }
    trim_mod(a);
  }
  return a;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& m_in, std::uint32_t p) {
  ModPoly m = m_in;
  trim_mod(m);
  const int deg = static_cast<int>(m.size()) - 1;
  if (deg < 1) return false;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      ModPoly f(static_cast<std::size_t>(d) + 1);
      std::uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      f[static_cast<std::size_t>(d)] = 1;
      if (mod_poly_rem(m, f, p).empty()) return false;
    }
  }
  return true;
}

std::shared_ptr<const PointedField> PointedField::create(std::uint32_t p, std::vector<long> minpoly) {
  if (!is_prime(p)) throw InvalidField("characteristic " + std::to_string(p) + " is not prime");
  ModPoly m;
  for (long c : minpoly) {
    long r = c % static_cast<long>(p);
    if (r < 0) r += p;
    m.push_back(static_cast<std::uint32_t>(r));
  }
  trim_mod(m);
  if (m.size() < 2) throw InvalidField("minimal polynomial must have degree >= 1");
  if (m.back() != 1) throw InvalidField("minimal polynomial must be monic");
  if (!is_irreducible_mod_p(m, p)) throw InvalidField("minimal polynomial is reducible over F_p");
  std::uint64_t size = 1;
  for (std::size_t i = 1; i < m.size(); ++i) {
    size *= p;
    if (size > (1ULL << 31)) throw InvalidField("field too large");
  }
  return std::make_shared<const PointedField>(Token{}, p, std::move(m));
}

PointedField::PointedField(Token, std::uint32_t p, std::vector<std::uint32_t> minpoly)
    : p_(p), minpoly_(std::move(minpoly)) {
  const int d = degree();
  std::uint64_t size = 1;
  for (int i = 0; i < d; ++i) size *= p_;
  size_ = static_cast<std::uint32_t>(size);
  // The class of x: x itself when deg >= 2, else the root -m_0.
  ModPoly x{0, 1};
  delta_code_ = encode(mod_poly_rem(x, minpoly_, p_));
  if (size_ <= 256) {
    mul_table_.resize(static_cast<std::size_t>(size_) * size_);
    for (std::uint32_t a = 0; a < size_; ++a) {
      for (std::uint32_t b = 0; b < size_; ++b) {
        mul_table_[static_cast<std::size_t>(a) * size_ + b] = static_cast<std::uint16_t>(mul_slow(a, b));
      }
    }
    inv_table_.assign(size_, 0);
    for (std::uint32_t a = 1; a < size_; ++a) {
      for (std::uint32_t b = 1; b < size_; ++b) {
        if (mul(a, b) == 1) {
          inv_table_[a] = b;
          break;
        }
      }
    }
  }
}

FieldElement PointedField::element(std::uint32_t code) const {
  if (code >= size_) throw std::out_of_range("field element code out of range");
  return FieldElement(shared_from_this(), code);
}

std::vector<std::uint32_t> PointedField::decode(std::uint32_t code) const {
  std::vector<std::uint32_t> rep(static_cast<std::size_t>(degree()));
  for (auto& r : rep) {
    r = code % p_;
    code /= p_;
  }
  return rep;
}

std::uint32_t PointedField::encode(const std::vector<std::uint32_t>& rep) const {
  std::uint32_t code = 0;
  for (auto it = rep.rbegin(); it != rep.rend(); ++it) code = code * p_ + (*it % p_);
  return code;
}

std::uint32_t PointedField::add(std::uint32_t a, std::uint32_t b) const {
  if (degree() == 1) return (a + b) % p_;
  std::uint32_t r = 0;
  std::uint32_t place = 1;
  while (a || b) {
    r += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

std::uint32_t PointedField::neg(std::uint32_t a) const {
  if (degree() == 1) return a == 0 ? 0 : p_ - a;
  std::uint32_t r = 0;
  std::uint32_t place = 1;
  while (a) {
    r += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return r;
}

std::uint32_t PointedField::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t PointedField::mul_slow(std::uint32_t a, std::uint32_t b) const {
  ModPoly x = decode(a);
  ModPoly y = decode(b);
  ModPoly r(x.size() + y.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % p_);
    }
  }
  ModPoly red = mod_poly_rem(r, minpoly_, p_);
  red.resize(static_cast<std::size_t>(degree()), 0);
  return encode(red);
}

std::uint32_t PointedField::mul(std::uint32_t a, std::uint32_t b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * size_ + b];
  if (degree() == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  return mul_slow(a, b);
}

std::uint32_t PointedField::inv(std::uint32_t a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in " + to_string());
  if (!inv_table_.empty()) return inv_table_[a];
  // a^(q-2)
  std::uint64_t e = size_ - 2;
  std::uint32_t r = 1;
  std::uint32_t b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint32_t PointedField::reduce_integer(const BigInt& v) const {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t PointedField::evaluate(const IntegerPolynomial& f) const {
  std::uint32_t r = 0;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    r = add(mul(r, delta_code_), reduce_integer(*it));
  }
  return r;
}

std::string PointedField::to_string() const {
  std::vector<BigInt> c(minpoly_.begin(), minpoly_.end());
  return "F_" + std::to_string(p_) + "[x]/(" + IntegerPolynomial(c).to_string("x") + ")";
}

std::vector<std::uint32_t> FieldElement::rep() const { return field_->decode(code_); }

FieldElement FieldElement::operator+(const FieldElement& o) const { return {field_, field_->add(code_, o.code_)}; }
FieldElement FieldElement::operator-(const FieldElement& o) const { return {field_, field_->sub(code_, o.code_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const { return {field_, field_->mul(code_, o.code_)}; }
FieldElement FieldElement::operator/(const FieldElement& o) const {
  return {field_, field_->mul(code_, field_->inv(o.code_))};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(code_)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return code_ == o.code_ && (field_ == o.field_ || *field_ == *o.field_);
}

std::string FieldElement::to_string() const {
  auto r = rep();
  std::vector<BigInt> c(r.begin(), r.end());
  return IntegerPolynomial(c).to_string("x");
}

std::string TorsionParams::to_string() const {
  return "(ell=" + std::to_string(ell) + ", p=" + (p ? std::to_string(*p) : std::string("inf")) + ")";
}

int detect_ell(const PointedField& k) {
  // ([n], [n+1]) runs through at most q^2 states and the recurrence is invertible.
  std::uint32_t prev = 0;
  std::uint32_t cur = 1;
  const std::uint64_t bound = static_cast<std::uint64_t>(k.size()) * k.size() + 1;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (cur == 0) return static_cast<int>(n);
    std::uint32_t next = k.sub(k.mul(k.delta_code(), cur), prev);
    prev = cur;
    cur = next;
  }
  throw std::logic_error("detect_ell did not terminate");
}

TorsionParams torsion_of(const PointedField& k) { return {detect_ell(k), k.characteristic()}; }

DoesNotDescend::DoesNotDescend(RationalFunction value, std::string context)
    : std::runtime_error("coefficient " + value.to_string() + " does not descend" +
                         (context.empty() ? std::string() : " (" + context + ")")),
      value_(std::move(value)) {}

FieldElement reduce_scalar(const RationalFunction& c, const std::shared_ptr<const PointedField>& k) {
  std::uint32_t den = k->evaluate(c.den());
  if (den == 0) throw DoesNotDescend(c);
  std::uint32_t num = k->evaluate(c.num());
  return k->element(k->mul(num, k->inv(den)));
}

}  // namespace tl
