#include "tl/jw.hpp"

#include <stdexcept>
#include <unordered_map>

#include "tl/pljw.hpp"

namespace tl {

const GenericMorphism& JwCache::get(int n) {
  if (n < 0) throw std::invalid_argument("JW_n needs n >= 0");
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(n);
    if (it != entries_.end()) return *it->second;
  }
  GenericMorphism value(GenericRing{}, n, n);
  if (n <= 1) {
    value = GenericMorphism::identity(GenericRing{}, n);
  } else {
    // JW_n = A - [n-1]/[n] A u_{n-1} A with A = JW_{n-1} (x) id_1.
    const GenericMorphism a = tensor_id(get(n - 1), 1);
    const auto u = GenericMorphism::from_diagram(GenericRing{}, generator_u(n, n - 1));
    const GenericMorphism aua = compose(compose(a, u), a);
    const RationalFunction c(quantum_int(n - 1), quantum_int(n));
    value = linear(a, aua, RationalFunction(1), -c);
  }
  insert(n, std::move(value));
  std::lock_guard lock(mutex_);
  return *entries_.at(n);
}

bool JwCache::contains(int n) const {
  std::lock_guard lock(mutex_);
  return entries_.count(n) != 0;
}

void JwCache::insert(int n, GenericMorphism value) {
  std::lock_guard lock(mutex_);
  entries_.try_emplace(n, std::make_unique<const GenericMorphism>(std::move(value)));
}

JwCache& default_jw_cache() {
  static JwCache cache;
  return cache;
}

const GenericMorphism& jw(int n) { return default_jw_cache().get(n); }

const GenericMorphism& jw_square(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GenericMorphism>> squares;
  {
    std::lock_guard lock(mutex);
    if (auto it = squares.find(n); it != squares.end()) return *it->second;
  }
  auto value = std::make_unique<const GenericMorphism>(compose(jw(n), jw(n)));
  std::lock_guard lock(mutex);
  return *squares.try_emplace(n, std::move(value)).first->second;
}

namespace {

RationalFunction morrison(const Diagram& d, std::unordered_map<Diagram, RationalFunction, DiagramHash>& memo) {
  const int n = d.source();
  if (n <= 1) return 1;
  if (auto it = memo.find(d); it != memo.end()) return it->second;
  // Folding the lowest target point to the bottom of the source keeps the
  // labels, so the folded diagram has n + 1 source points and n - 1 targets.
  RationalFunction sum;
  const RationalFunction denom = quantum_int(n);
  for (int i = 1; i <= n; ++i) {
    if (d.partner(i - 1) != i) continue;
    DiagramBuilder b(n - 1, n - 1);
    auto relabel = [&](int label) { return label < i - 1 ? label : label - 2; };
    for (int l = 0; l < 2 * n; ++l) {
      if (l == i - 1 || l == i) continue;
      b.join(relabel(l), relabel(d.partner(l)));
    }
    RationalFunction w = RationalFunction(quantum_int(i)) / denom;
    if ((n - i) % 2 != 0) w = -w;
    sum += w * morrison(b.build(), memo);
  }
  memo.emplace(d, sum);
  return sum;
}

}  // namespace

RationalFunction jw_coeff_morrison(const Diagram& d) {
  if (d.source() != d.target()) throw std::invalid_argument("JW coefficients need an (n, n) diagram");
  std::unordered_map<Diagram, RationalFunction, DiagramHash> memo;
  return morrison(d, memo);
}

bool jw_exists_adam(int n, const TorsionParams& t) {
  if (n < 0) return false;
  if (n < t.ell) return true;
  const long q = static_cast<long>(n) + 1;
  if (q % t.ell != 0) return false;
  if (!t.p) return true;
  long rest = q / t.ell;
  const long p = static_cast<long>(*t.p);
  while (rest % p == 0) rest /= p;
  return rest < p;
}

bool jw_exists_binomial(int n, const PointedField& k) {
  for (int r = 0; r <= n; ++r) {
    if (k.evaluate(quantum_binomial(n, r)) == 0) return false;
  }
  return true;
}

FieldMorphism descend_jw(int n, const std::shared_ptr<const PointedField>& k) {
  return reduce_morphism(jw(n), k);
}

JwTwoParts::JwTwoParts(int r, std::shared_ptr<const PointedField> k) {
  const TorsionParams t = torsion_of(*k);
  big_p_ = static_cast<int>(p_super(r, t));
  const FieldMorphism base = descend_jw(big_p_ - 1, k);
  for (int i = 0; i < big_p_; ++i) {
    FieldMorphism ji = turn_up(base, i);
    if (i > 0) parts_.emplace(-i, involute(ji));
    parts_.emplace(i, std::move(ji));
  }
}

const FieldMorphism& JwTwoParts::j(int i) const {
  auto it = parts_.find(i);
  if (it == parts_.end()) throw std::out_of_range("J_i index out of range");
  return it->second;
}

FieldMorphism JwTwoParts::assemble() const {
  const FieldRing& ring = parts_.begin()->second.ring();
  FieldMorphism sum(ring, 2 * big_p_ - 1, 2 * big_p_ - 1);
  const auto id1 = FieldMorphism::identity(ring, 1);
  for (int i = -(big_p_ - 1); i <= big_p_ - 1; ++i) {
    FieldMorphism term = tensor(tensor(involute(k(i)), id1), j(i));
    const std::uint32_t sign = (i % 2 == 0) ? ring.one() : ring.neg(ring.one());
    sum = linear(sum, term, ring.one(), sign);
  }
  return sum;
}

FieldMorphism construct_jw_two(int r, const std::shared_ptr<const PointedField>& k) {
  JwTwoParts parts(r, k);
  FieldMorphism e = parts.assemble();
  if (!(e == descend_jw(2 * parts.big_p() - 1, k))) {
    throw std::logic_error("assembled JW_" + std::to_string(2 * parts.big_p() - 1) + " differs from the reduction");
  }
  return e;
}

bool jw_trace_check(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("trace check needs 1 <= m <= n");
  const GenericMorphism lhs = partial_trace(jw(n), m);
  const RationalFunction c(quantum_int(n + 1), quantum_int(n + 1 - m));
  return lhs == scale(jw(n - m), c);
}

namespace {

TraceComparison compare_traced(const FieldMorphism& traced, const FieldMorphism& reference, std::uint32_t stated) {
  const PointedField& k = *traced.ring().field;
  TraceComparison out;
  out.stated = k.element(stated).to_string();
  out.holds = traced == scale(reference, stated);
  if (auto c = proportionality(traced, reference)) out.observed = k.element(*c).to_string();
  return out;
}

}  // namespace

TraceComparison trace_two_check(int r, const std::shared_ptr<const PointedField>& k) {
  JwTwoParts parts(r, k);
  const int big_p = parts.big_p();
  const FieldMorphism traced = partial_trace(descend_jw(2 * big_p - 1, k), 1);
  const FieldMorphism reference = tensor(parts.j(big_p - 1), parts.j(-(big_p - 1)));
  TraceComparison out = compare_traced(traced, reference, k->reduce_integer(2));
  out.note = "tau(JW_" + std::to_string(2 * big_p - 1) + ") vs c J_" + std::to_string(big_p - 1) + " (x) J_" +
             std::to_string(-(big_p - 1));
  return out;
}

TraceComparison trace_proper_check(int a, int r, int exponent, const std::shared_ptr<const PointedField>& k) {
  const TorsionParams t = torsion_of(*k);
  const int big_p = static_cast<int>(p_super(r, t));
  if (a < 2 || static_cast<std::uint32_t>(a) >= *t.p) throw std::invalid_argument("the proper trace check needs 2 <= a < p");
  const int top = a * big_p - 1;
  const int bottom = (a - 1) * big_p - 1;
  TraceComparison out;
  out.note = "tau^" + std::to_string(exponent) + "(JW_" + std::to_string(top) + ") vs c JW_" + std::to_string(bottom);
  const std::uint32_t stated = k->mul(k->reduce_integer(a), k->inv(k->reduce_integer(a - 1)));
  if (top - exponent != bottom) {
    out.stated = k->element(stated).to_string();
    out.note += ": exponent does not match the strand counts";
    return out;
  }
  const FieldMorphism traced = partial_trace(descend_jw(top, k), exponent);
  TraceComparison cmp = compare_traced(traced, descend_jw(bottom, k), stated);
  cmp.note = out.note;
  return cmp;
}

}  // namespace tl
