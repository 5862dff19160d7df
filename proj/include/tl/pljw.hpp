// (ell, p)-digits, supports, fathers and the (ell, p)-Jones-Wenzl idempotents.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tl/morphism.hpp"

namespace tl {

/// p^(0) = 1, p^(i) = ell p^(i-1) for i > 0. Throws std::domain_error for i >= 2 without a characteristic.
std::int64_t p_super(int i, const TorsionParams& t);

/// Mixed-radix expansion x = sum digits[i] p^(i), digits[0] < ell, digits[i] < p.
struct LPDigits {
  TorsionParams torsion;
  std::vector<std::int64_t> digits;
  std::int64_t value = 0;

  /// Index of the lowest nonzero digit (a), -1 for zero.
  int lowest() const;
  /// Index of the highest nonzero digit (b), -1 for zero.
  int highest() const;
  std::int64_t digit(int i) const { return i < static_cast<int>(digits.size()) ? digits[static_cast<std::size_t>(i)] : 0; }
  /// "n_0,n_1,..."
  std::string to_string() const;
};

LPDigits lp_digits(std::int64_t x, const TorsionParams& t);

/// I_n in increasing order.
std::vector<std::int64_t> supp(std::int64_t n, const TorsionParams& t);
/// |I_n| = 1; throws std::logic_error if this disagrees with jw_exists_adam.
bool is_adam(std::int64_t n, const TorsionParams& t);
/// f(n); throws std::invalid_argument for Adam n.
std::int64_t father(std::int64_t n, const TorsionParams& t);
/// I_n = (I_f + m) disjoint union (I_f - m), m = n - f(n). Vacuously true for Adam n.
bool supp_split_check(std::int64_t n, const TorsionParams& t);

/// binom(N - n, (m + N - n - i) / 2), zero off the valid range.
std::uint64_t multiplicity_induced(int big_n, int n, int m, int i);

struct PljwDecomposition {
  int n = 0;
  TorsionParams torsion;
  std::vector<int> support;  // increasing
  std::optional<int> father;
  int shift = 0;  // m = n - f(n), 0 for Adam n
  std::map<int, RationalFunction> lambda;
  std::map<int, GenericMorphism> projector;  // p_n^i : n -> i
  std::map<int, GenericMorphism> terms;      // U_n^i = p_n^i JW_i iota(p_n^i)
  GenericMorphism total{GenericRing{}, 0, 0};
};

class PljwCache {
 public:
  const PljwDecomposition& get(int n, const TorsionParams& t);
  void insert(PljwDecomposition d);

 private:
  using Key = std::tuple<int, int, std::int64_t>;
  static Key key(int n, const TorsionParams& t) { return {n, t.ell, t.p ? static_cast<std::int64_t>(*t.p) : -1}; }
  std::mutex mutex_;
  std::map<Key, std::unique_ptr<const PljwDecomposition>> entries_;
};

PljwCache& default_pljw_cache();

/// The coefficients lambda_n^i, i in I_n, by recursion along fathers alone.
std::map<int, RationalFunction> pljw_lambda(int n, const TorsionParams& t);

/// Recursive construction along the father chain, cached.
const PljwDecomposition& build_pljw(int n, const TorsionParams& t);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PljwReport {
  std::vector<CheckResult> checks;
  bool ok() const;
};

/// Idempotency, orthogonality, pairing, absorption, involution invariance, unit coefficient,
/// through degrees and the defining sum, all exactly over Q(delta).
PljwReport verify_pljw(const PljwDecomposition& d);

/// Image of pJW_n in k with the torsion read off k. Non-descent is an internal error.
FieldMorphism descend_pljw(int n, const std::shared_ptr<const PointedField>& k);

/// tau^steps(pJW_n) over Q(delta).
GenericMorphism trace_pljw(int n, const TorsionParams& t, int steps);

/// The trace case analysis at t = p^(a) for non-Adam n with f(n) = n - m.
struct PljwTraceCase {
  int n = 0;
  int a = 0;            // lowest nonzero digit index of n + 1
  std::int64_t n_a = 0;  // that digit
  int t = 0;            // p^(a)
  int m = 0;            // n_a p^(a)
  /// Over Q(delta): tau^t(pJW_n) = c pJW_{n-t} with c = [m]/[m-t] when n_a > 1, [2t]/[t] when n_a = 1.
  bool generic_form = false;
  std::string generic_stated;
  /// The observed Q(delta) constant, when the two sides are proportional.
  std::optional<std::string> generic_observed;
  /// In k: tau^t(pJW_n) against the stated case constant times pJW_{n-t}.
  bool field_case = false;
  std::string field_stated;
  std::optional<std::string> field_observed;
};

PljwTraceCase trace_case_check(int n, const std::shared_ptr<const PointedField>& k);

/// Identity coefficient of tau^steps(pJW_n) over Q(delta), with its comparison against [2]^steps.
struct IdentityCoefficientReport {
  RationalFunction coefficient;
  RationalFunction expected;
  bool matches = false;
};
/// Requires n + 1 to have lowest digit index a > 0, highest b > a, and steps < n_a p^(a).
IdentityCoefficientReport identity_coeff_trace(int n, int steps, const TorsionParams& t);

}  // namespace tl
