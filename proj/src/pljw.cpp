#include "tl/pljw.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tl/jw.hpp"

namespace tl {

std::int64_t p_super(int i, const TorsionParams& t) {
  if (i < 0) throw std::invalid_argument("p^(i) needs i >= 0");
  if (i == 0) return 1;
  if (i == 1) return t.ell;
  if (!t.p) throw std::domain_error("p^(i) for i >= 2 needs a finite characteristic");
  std::int64_t v = t.ell;
  for (int j = 1; j < i; ++j) {
    if (v > (std::int64_t{1} << 56)) throw std::overflow_error("p^(i) overflows");
    v *= static_cast<std::int64_t>(*t.p);
  }
  return v;
}

int LPDigits::lowest() const {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

int LPDigits::highest() const {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

std::string LPDigits::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out << ',';
    out << digits[i];
  }
  return out.str();
}

LPDigits lp_digits(std::int64_t x, const TorsionParams& t) {
  if (x < 0) throw std::invalid_argument("(ell, p)-digits need x >= 0");
  LPDigits d;
  d.torsion = t;
  d.value = x;
  d.digits.push_back(x % t.ell);
  std::int64_t rest = x / t.ell;
  if (!t.p) {
    if (rest != 0) d.digits.push_back(rest);
  } else {
    const auto p = static_cast<std::int64_t>(*t.p);
    while (rest != 0) {
      d.digits.push_back(rest % p);
      rest /= p;
    }
  }
  return d;
}

std::vector<std::int64_t> supp(std::int64_t n, const TorsionParams& t) {
  if (n < 0) throw std::invalid_argument("supp needs n >= 0");
  const LPDigits d = lp_digits(n + 1, t);
  const int b = d.highest();
  std::vector<std::int64_t> values{d.digit(b) * p_super(b, t)};
  for (int i = b - 1; i >= 0; --i) {
    const std::int64_t c = d.digit(i) * p_super(i, t);
    if (c == 0) continue;
    std::vector<std::int64_t> next;
    next.reserve(values.size() * 2);
    for (std::int64_t v : values) {
      next.push_back(v + c);
      next.push_back(v - c);
    }
    values = std::move(next);
  }
  std::set<std::int64_t> out;
  for (std::int64_t v : values) out.insert(v - 1);
  return {out.begin(), out.end()};
}

bool is_adam(std::int64_t n, const TorsionParams& t) {
  const bool by_support = supp(n, t).size() == 1;
  if (by_support != jw_exists_adam(static_cast<int>(n), t)) {
    throw std::logic_error("Adam test disagrees with the closed form at n = " + std::to_string(n));
  }
  return by_support;
}

std::int64_t father(std::int64_t n, const TorsionParams& t) {
  if (is_adam(n, t)) throw std::invalid_argument(std::to_string(n) + " is Adam and has no father");
  const LPDigits d = lp_digits(n + 1, t);
  const int a = d.lowest();
  return n + 1 - d.digit(a) * p_super(a, t) - 1;
}

bool supp_split_check(std::int64_t n, const TorsionParams& t) {
  if (is_adam(n, t)) return true;
  const std::int64_t f = father(n, t);
  const std::int64_t m = n - f;
  std::vector<std::int64_t> joined;
  for (std::int64_t i : supp(f, t)) {
    joined.push_back(i + m);
    joined.push_back(i - m);
  }
  std::sort(joined.begin(), joined.end());
  if (std::adjacent_find(joined.begin(), joined.end()) != joined.end()) return false;
  return joined == supp(n, t);
}

std::uint64_t multiplicity_induced(int big_n, int n, int m, int i) {
  const int k = big_n - n;
  if (k < 0) throw std::invalid_argument("multiplicity_induced needs n <= N");
  const int twice = m + k - i;
  if (twice < 0 || twice % 2 != 0 || twice / 2 > k) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(twice / 2));
  return r.get_ui();
}

std::map<int, RationalFunction> pljw_lambda(int n, const TorsionParams& t) {
  if (is_adam(n, t)) return {{n, RationalFunction(1)}};
  const int f = static_cast<int>(father(n, t));
  const int m = n - f;
  std::map<int, RationalFunction> out;
  for (const auto& [i, lam] : pljw_lambda(f, t)) {
    out.emplace(i + m, lam);
    out.emplace(i - m, lam * RationalFunction(quantum_int(i + 1 - m), quantum_int(i + 1)));
  }
  return out;
}

namespace {

PljwDecomposition build_uncached(int n, const TorsionParams& t) {
  PljwDecomposition d;
  d.n = n;
  d.torsion = t;
  const GenericRing ring;
  if (is_adam(n, t)) {
    d.support = {n};
    d.lambda.emplace(n, RationalFunction(1));
    d.projector.emplace(n, GenericMorphism::identity(ring, n));
    d.terms.emplace(n, jw(n));
    d.total = jw(n);
    return d;
  }
  const int f = static_cast<int>(father(n, t));
  const int m = n - f;
  d.father = f;
  d.shift = m;
  const PljwDecomposition& parent = build_pljw(f, t);
  for (int i : parent.support) {
    const RationalFunction& lam = parent.lambda.at(i);
    const GenericMorphism up = tensor_id(parent.projector.at(i), m);
    d.lambda.emplace(i + m, lam);
    d.projector.emplace(i + m, up);
    const GenericMorphism bend = tensor(GenericMorphism::identity(ring, i - m),
                                        GenericMorphism::from_diagram(ring, Diagram::nested_cap(m)));
    d.lambda.emplace(i - m, lam * RationalFunction(quantum_int(i + 1 - m), quantum_int(i + 1)));
    d.projector.emplace(i - m, compose(compose(up, tensor_id(jw(i), m)), bend));
  }
  GenericMorphism total(ring, n, n);
  for (const auto& [i, p] : d.projector) {
    d.support.push_back(i);
    GenericMorphism u = compose(compose(p, jw(i)), involute(p));
    total = linear(total, u, ring.one(), d.lambda.at(i));
    d.terms.emplace(i, std::move(u));
  }
  d.total = std::move(total);
  return d;
}

}  // namespace

const PljwDecomposition& PljwCache::get(int n, const TorsionParams& t) {
  if (n < 0) throw std::invalid_argument("pJW_n needs n >= 0");
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key(n, t)); it != entries_.end()) return *it->second;
  }
  insert(build_uncached(n, t));
  std::lock_guard lock(mutex_);
  return *entries_.at(key(n, t));
}

void PljwCache::insert(PljwDecomposition d) {
  const Key k = key(d.n, d.torsion);
  std::lock_guard lock(mutex_);
  entries_.try_emplace(k, std::make_unique<const PljwDecomposition>(std::move(d)));
}

PljwCache& default_pljw_cache() {
  static PljwCache cache;
  return cache;
}

const PljwDecomposition& build_pljw(int n, const TorsionParams& t) { return default_pljw_cache().get(n, t); }

bool PljwReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

void record(PljwReport& r, std::string name, bool pass, std::string detail = {}) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

}  // namespace

PljwReport verify_pljw(const PljwDecomposition& d) {
  PljwReport report;
  const GenericRing ring;
  const int n = d.n;

  GenericMorphism sum(ring, n, n);
  for (const auto& [i, u] : d.terms) sum = linear(sum, u, ring.one(), d.lambda.at(i));
  record(report, "sum", sum == d.total);

  // G_ij = JW_i iota(p^i) p^j JW_j, then U^i U^j = p^i G_ij iota(p^j).
  std::map<int, GenericMorphism> left;
  std::map<int, GenericMorphism> right;
  for (int i : d.support) {
    const GenericMorphism& p = d.projector.at(i);
    left.emplace(i, compose(jw(i), involute(p)));
    right.emplace(i, compose(p, jw(i)));
  }
  bool pairing = true;
  bool orthogonal = true;
  std::string pairing_detail;
  std::string orthogonal_detail;
  GenericMorphism square(ring, n, n);
  for (int i : d.support) {
    for (int j : d.support) {
      const bool plain = i == j && i == n;
      const GenericMorphism g = plain ? jw_square(n) : compose(left.at(i), right.at(j));
      const GenericMorphism expected_g =
          i == j ? scale(jw(i), d.lambda.at(i).inverse()) : GenericMorphism(ring, i, j);
      if (!(g == expected_g)) {
        pairing = false;
        pairing_detail += "(" + std::to_string(i) + "," + std::to_string(j) + ") ";
      }
      if (g.is_zero()) {
        if (i == j) {
          orthogonal = false;
          orthogonal_detail += "(" + std::to_string(i) + "," + std::to_string(i) + ") ";
        }
        continue;
      }
      const RationalFunction lij = d.lambda.at(i) * d.lambda.at(j);
      const GenericMorphism prod = scale(compose(compose(d.projector.at(i), g), involute(d.projector.at(j))), lij);
      const GenericMorphism expected =
          i == j ? scale(d.terms.at(i), d.lambda.at(i)) : GenericMorphism(ring, n, n);
      if (!(prod == expected)) {
        orthogonal = false;
        orthogonal_detail += "(" + std::to_string(i) + "," + std::to_string(j) + ") ";
      }
      square = square + prod;
    }
  }
  record(report, "idempotent", square == d.total);
  record(report, "orthogonal", orthogonal, orthogonal_detail);
  record(report, "pairing", pairing, pairing_detail);

  if (d.father) {
    const GenericMorphism x = tensor_id(build_pljw(*d.father, d.torsion).total, d.shift);
    const bool lhs = compose(x, d.total) == d.total;
    const bool rhs = compose(d.total, x) == d.total;
    record(report, "absorption", lhs && rhs, lhs ? (rhs ? "" : "right side fails") : "left side fails");
  } else {
    record(report, "absorption", true, "Adam, no father");
  }

  record(report, "involution", involute(d.total) == d.total);
  record(report, "unit", d.total.coefficient_value(Diagram::identity(n)).is_one());
  bool degrees = true;
  std::string degree_detail;
  for (const auto& [i, u] : d.terms) {
    if (max_through_degree(u) != i) {
      degrees = false;
      degree_detail += std::to_string(i) + " ";
    }
  }
  record(report, "through_degree", degrees, degree_detail);
  return report;
}

FieldMorphism descend_pljw(int n, const std::shared_ptr<const PointedField>& k) {
  const TorsionParams t = torsion_of(*k);
  try {
    return reduce_morphism(build_pljw(n, t).total, k);
  } catch (const DoesNotDescend& e) {
    throw std::logic_error(std::string("pJW_") + std::to_string(n) + " failed to descend: " + e.what());
  }
}

GenericMorphism trace_pljw(int n, const TorsionParams& t, int steps) {
  if (steps < 0 || steps > n) throw std::invalid_argument("trace needs 0 <= steps <= n");
  return partial_trace(build_pljw(n, t).total, steps);
}

PljwTraceCase trace_case_check(int n, const std::shared_ptr<const PointedField>& k) {
  const TorsionParams t = torsion_of(*k);
  if (is_adam(n, t)) throw std::invalid_argument("trace cases need a non-Adam n");
  const LPDigits digits = lp_digits(n + 1, t);
  PljwTraceCase c;
  c.n = n;
  c.a = digits.lowest();
  c.n_a = digits.digit(c.a);
  c.t = static_cast<int>(p_super(c.a, t));
  c.m = static_cast<int>(c.n_a) * c.t;

  const GenericMorphism traced = trace_pljw(n, t, c.t);
  const GenericMorphism& below = build_pljw(n - c.t, t).total;
  RationalFunction generic;
  if (c.n_a > 1) {
    generic = RationalFunction(quantum_int(c.m), quantum_int(c.m - c.t));
  } else {
    generic = RationalFunction(quantum_int(2 * c.t), quantum_int(c.t));
  }
  c.generic_stated = generic.to_string();
  c.generic_form = traced == scale(below, generic);
  if (auto r = proportionality(traced, below)) c.generic_observed = r->to_string();

  std::uint32_t stated = 0;
  const auto na = static_cast<long>(c.n_a);
  if (c.n_a > 1 && c.a == 0) {
    stated = k->mul(k->evaluate(quantum_int(static_cast<int>(na))), k->inv(k->evaluate(quantum_int(static_cast<int>(na - 1)))));
  } else if (c.n_a > 1) {
    stated = k->mul(k->reduce_integer(na), k->inv(k->reduce_integer(na - 1)));
  } else if (c.a == 0) {
    stated = k->evaluate(quantum_int(2));
  } else {
    stated = k->reduce_integer(2);
  }
  const FieldMorphism traced_k = reduce_morphism(traced, k);
  const FieldMorphism below_k = descend_pljw(n - c.t, k);
  c.field_stated = k->element(stated).to_string();
  c.field_case = traced_k == scale(below_k, stated);
  if (auto r = proportionality(traced_k, below_k)) c.field_observed = k->element(*r).to_string();
  return c;
}

IdentityCoefficientReport identity_coeff_trace(int n, int steps, const TorsionParams& t) {
  const LPDigits digits = lp_digits(n + 1, t);
  const int a = digits.lowest();
  const int b = digits.highest();
  if (!(b > a && a > 0)) throw std::invalid_argument("identity_coeff_trace needs b > a > 0");
  if (steps < 0 || steps >= digits.digit(a) * p_super(a, t)) {
    throw std::invalid_argument("identity_coeff_trace needs 0 <= steps < n_a p^(a)");
  }
  IdentityCoefficientReport r;
  r.coefficient = trace_pljw(n, t, steps).coefficient_value(Diagram::identity(n - steps));
  IntegerPolynomial power(1);
  for (int i = 0; i < steps; ++i) power *= quantum_int(2);
  r.expected = power;
  r.matches = r.coefficient == r.expected;
  return r;
}

}  // namespace tl
