// Classical Jones-Wenzl idempotents over Q(delta) and their images in pointed fields.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "tl/morphism.hpp"

namespace tl {

/// Append-only store of JW_n over Q(delta). References stay valid for the cache's lifetime.
class JwCache {
 public:
  /// JW_n, computing and storing JW_1..JW_n as needed. JW_0 is the empty diagram.
  const GenericMorphism& get(int n);
  bool contains(int n) const;
  /// Seeds an entry, e.g. from disk. An existing entry is kept.
  void insert(int n, GenericMorphism value);

 private:
  mutable std::mutex mutex_;
  std::map<int, std::unique_ptr<const GenericMorphism>> entries_;
};

JwCache& default_jw_cache();

/// JW_n from the default cache.
const GenericMorphism& jw(int n);

/// JW_n * JW_n computed by multiplication, cached. Used by the verifiers.
const GenericMorphism& jw_square(int n);

/// The coefficient of d in JW_n, by folding the lowest target point and recursing on JW_{n-1}.
RationalFunction jw_coeff_morrison(const Diagram& d);

/// Closed form: n < ell, or n + 1 = a ell p^k with 1 <= a < p and k >= 0.
bool jw_exists_adam(int n, const TorsionParams& t);
/// Every quantum binomial [n choose r] is nonzero in k.
bool jw_exists_binomial(int n, const PointedField& k);
/// Image of JW_n in k; throws DoesNotDescend.
FieldMorphism descend_jw(int n, const std::shared_ptr<const PointedField>& k);

/// Building blocks J_i for JW_{2P-1}, P = p^(r), over k.
class JwTwoParts {
 public:
  JwTwoParts(int r, std::shared_ptr<const PointedField> k);
  int big_p() const { return big_p_; }
  /// J_i for -(P-1) <= i <= P-1.
  const FieldMorphism& j(int i) const;
  /// K_i, the vertical flip of J_i.
  FieldMorphism k(int i) const { return flip_vertical(j(i)); }
  /// The alternating sum of iota(K_i) (x) id_1 (x) J_i.
  FieldMorphism assemble() const;

 private:
  int big_p_;
  std::map<int, FieldMorphism> parts_;
};

/// Assembles JW_{2P-1} from the J_i and checks it against descend_jw. Throws std::logic_error on mismatch.
FieldMorphism construct_jw_two(int r, const std::shared_ptr<const PointedField>& k);

/// tau^m(JW_n) = [n+1]/[n+1-m] JW_{n-m} over Q(delta), 1 <= m <= n.
bool jw_trace_check(int n, int m);

/// Outcome of comparing a traced element with a stated multiple of a reference element.
struct TraceComparison {
  bool holds = false;
  std::string stated;                  // the constant being tested
  std::optional<std::string> observed;  // the actual constant, when the two are proportional
  std::string note;
};

/// tau(JW_{2P-1}) against 2 J_{P-1} (x) J_{-(P-1)} over k.
TraceComparison trace_two_check(int r, const std::shared_ptr<const PointedField>& k);
/// tau^e(JW_{aP-1}) against a/(a-1) JW_{(a-1)P-1} over k, P = p^(r), for the exponent e given.
TraceComparison trace_proper_check(int a, int r, int exponent, const std::shared_ptr<const PointedField>& k);

}  // namespace tl
