#include "tl/morphism.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <random>
#include <unordered_set>

namespace tl {

FieldRing::Value FieldRing::from_scalar(const Scalar& s) const {
  if (!(s.field() == *field)) throw ShapeMismatch("field element from a different field");
  return s.code();
}

template <class Ring>
void Morphism<Ring>::add_term(const Diagram& d, const Value& c) {
  if (d.source() != source_ || d.target() != target_) {
    throw ShapeMismatch("diagram " + d.to_string() + " does not fit a " + std::to_string(source_) + "->" +
                        std::to_string(target_) + " morphism");
  }
  if (Ring::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(d, c);
  if (inserted) return;
  it->second = ring_.add(it->second, c);
  if (Ring::is_zero(it->second)) terms_.erase(it);
}

template <class Ring>
typename Morphism<Ring>::Value Morphism<Ring>::coefficient_value(const Diagram& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? ring_.zero() : it->second;
}

template <class Ring>
typename Morphism<Ring>::Scalar Morphism<Ring>::coefficient(const Diagram& d) const {
  return ring_.to_scalar(coefficient_value(d));
}

template <class Ring>
std::vector<std::pair<Diagram, typename Morphism<Ring>::Value>> Morphism<Ring>::sorted_terms() const {
  std::vector<std::pair<Diagram, Value>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

template class Morphism<GenericRing>;
template class Morphism<FieldRing>;

namespace {

template <class Ring>
void check_same_ring(const Morphism<Ring>& a, const Morphism<Ring>& b) {
  if (!(a.ring() == b.ring())) throw ShapeMismatch("morphisms live over different rings");
}

// ---------------------------------------------------------------------------
// Product engine.
//
// A product a * b visits every left diagram x of a and produces, for all right
// diagrams y of b at once, the pair (x * y, loops) encoded as rank << 6 | loops.
// For large products the left diagrams are organised in a forest whose edges
// are x = u_i * parent, so x * y is obtained from parent * y by a table lookup.

constexpr int kLoopBits = 6;
constexpr std::uint32_t kLoopMask = (1u << kLoopBits) - 1;
constexpr std::uint64_t kDenseLimit = 1u << 20;

struct Forest {
  std::vector<int> parent;
  std::vector<int> gen;
  std::vector<std::vector<int>> children;
  std::vector<int> roots;
};

struct Action {
  std::uint64_t count = 0;
  std::vector<std::uint32_t> table;  // (i - 1) * count + rank -> rank' << 1 | loop
};

std::mutex g_table_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const Forest>> g_forests;
std::map<std::pair<int, int>, std::shared_ptr<const Action>> g_actions;

std::shared_ptr<const Action> action_table(int n, int r) {
  {
    std::lock_guard lock(g_table_mutex);
    auto it = g_actions.find({n, r});
    if (it != g_actions.end()) return it->second;
  }
  auto act = std::make_shared<Action>();
  act->count = diagram_count(n, r);
  act->table.resize(static_cast<std::size_t>(std::max(n - 1, 0)) * act->count);
  for (int i = 1; i < n; ++i) {
    const Diagram u = generator_u(n, i);
    for (std::uint64_t z = 0; z < act->count; ++z) {
      Composite c = compose(u, diagram_unrank(n, r, z));
      act->table[static_cast<std::size_t>(i - 1) * act->count + z] =
          static_cast<std::uint32_t>(diagram_rank(c.diagram) << 1) | static_cast<std::uint32_t>(c.loops);
    }
  }
  std::lock_guard lock(g_table_mutex);
  return g_actions.emplace(std::make_pair(n, r), std::move(act)).first->second;
}

std::shared_ptr<const Forest> forest(int n, int m) {
  {
    std::lock_guard lock(g_table_mutex);
    auto it = g_forests.find({n, m});
    if (it != g_forests.end()) return it->second;
  }
  auto act = action_table(n, m);
  const std::uint64_t count = act->count;
  auto f = std::make_shared<Forest>();
  f->parent.assign(count, -1);
  f->gen.assign(count, 0);
  f->children.resize(count);
  std::vector<char> has_incoming(count, 0);
  for (int i = 1; i < n; ++i) {
    for (std::uint64_t z = 0; z < count; ++z) {
      std::uint32_t e = act->table[static_cast<std::size_t>(i - 1) * count + z];
      if ((e & 1) == 0 && (e >> 1) != z) has_incoming[e >> 1] = 1;
    }
  }
  std::vector<char> reached(count, 0);
  auto grow = [&](int root) {
    f->roots.push_back(root);
    reached[static_cast<std::size_t>(root)] = 1;
    std::vector<int> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      for (int i = 1; i < n; ++i) {
        std::uint32_t e = act->table[static_cast<std::size_t>(i - 1) * count + static_cast<std::size_t>(x)];
        const int y = static_cast<int>(e >> 1);
        if ((e & 1) != 0 || reached[static_cast<std::size_t>(y)]) continue;
        reached[static_cast<std::size_t>(y)] = 1;
        f->parent[static_cast<std::size_t>(y)] = x;
        f->gen[static_cast<std::size_t>(y)] = i;
        f->children[static_cast<std::size_t>(x)].push_back(y);
        queue.push_back(y);
      }
    }
  };
  for (std::uint64_t z = 0; z < count; ++z) {
    if (!has_incoming[z]) grow(static_cast<int>(z));
  }
  for (std::uint64_t z = 0; z < count; ++z) {
    if (!reached[z]) grow(static_cast<int>(z));
  }
  std::lock_guard lock(g_table_mutex);
  return g_forests.emplace(std::make_pair(n, m), std::move(f)).first->second;
}

// Assigns dense ids to result diagrams. Uses ranks when the result space is
// small enough, a hash map otherwise.
class ResultIndex {
 public:
  ResultIndex(int n, int r) : n_(n), r_(r), dense_(diagram_count(n, r) <= kDenseLimit) {}
  bool dense() const { return dense_; }
  std::uint32_t id(const Diagram& d) {
    if (dense_) return static_cast<std::uint32_t>(diagram_rank(d));
    auto [it, inserted] = ids_.try_emplace(d, static_cast<std::uint32_t>(diagrams_.size()));
    if (inserted) diagrams_.push_back(d);
    return it->second;
  }
  std::uint64_t capacity() const { return dense_ ? diagram_count(n_, r_) : diagrams_.size(); }
  Diagram diagram(std::uint32_t id) const { return dense_ ? diagram_unrank(n_, r_, id) : diagrams_[id]; }

 private:
  int n_;
  int r_;
  bool dense_;
  std::unordered_map<Diagram, std::uint32_t, DiagramHash> ids_;
  std::vector<Diagram> diagrams_;
};

// Calls visit(x_index, states) for every left term, states[y] = id << 6 | loops.
template <class Visit>
void enumerate_products(const std::vector<Diagram>& left, const std::vector<Diagram>& right, int n, int m, int r,
                        ResultIndex& index, Visit&& visit) {
  std::vector<std::uint32_t> states(right.size());
  auto direct = [&](const Diagram& x) {
    for (std::size_t y = 0; y < right.size(); ++y) {
      Composite c = compose(x, right[y]);
      states[y] = index.id(c.diagram) << kLoopBits | static_cast<std::uint32_t>(c.loops);
    }
  };
  const bool use_forest = index.dense() && n >= 2 && diagram_count(n, m) <= kDenseLimit &&
                          left.size() * right.size() >= 4096 && left.size() >= 8;
  if (!use_forest) {
    for (std::size_t x = 0; x < left.size(); ++x) {
      direct(left[x]);
      visit(x, states.data());
    }
    return;
  }
  auto f = forest(n, m);
  auto act = action_table(n, r);
  const std::uint64_t count = diagram_count(n, m);
  std::vector<int> term_of(count, -1);
  std::vector<char> needed(count, 0);
  for (std::size_t x = 0; x < left.size(); ++x) {
    auto rank = static_cast<std::size_t>(diagram_rank(left[x]));
    term_of[rank] = static_cast<int>(x);
    for (int v = static_cast<int>(rank); v >= 0 && !needed[static_cast<std::size_t>(v)];
         v = f->parent[static_cast<std::size_t>(v)]) {
      needed[static_cast<std::size_t>(v)] = 1;
    }
  }
  // Depth-first walk; level d of `stack_states` holds the states of the node at depth d.
  std::vector<std::vector<std::uint32_t>> stack_states;
  struct Frame {
    int node;
    std::size_t next_child;
  };
  std::vector<Frame> stack;
  for (int root : f->roots) {
    if (!needed[static_cast<std::size_t>(root)]) continue;
    stack.clear();
    if (stack_states.empty()) stack_states.emplace_back(right.size());
    direct(diagram_unrank(n, m, static_cast<std::uint64_t>(root)));
    stack_states[0] = states;
    stack.push_back({root, 0});
    if (term_of[static_cast<std::size_t>(root)] >= 0) {
      visit(static_cast<std::size_t>(term_of[static_cast<std::size_t>(root)]), stack_states[0].data());
    }
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& kids = f->children[static_cast<std::size_t>(top.node)];
      if (top.next_child == kids.size()) {
        stack.pop_back();
        continue;
      }
      const int child = kids[top.next_child++];
      if (!needed[static_cast<std::size_t>(child)]) continue;
      const std::size_t depth = stack.size();
      if (stack_states.size() <= depth) stack_states.emplace_back(right.size());
      const std::uint32_t* src = stack_states[depth - 1].data();
      std::uint32_t* dst = stack_states[depth].data();
      const std::uint32_t* tab =
          act->table.data() + static_cast<std::size_t>(f->gen[static_cast<std::size_t>(child)] - 1) * act->count;
      for (std::size_t y = 0; y < right.size(); ++y) {
        const std::uint32_t e = tab[src[y] >> kLoopBits];
        dst[y] = (e >> 1) << kLoopBits | ((src[y] & kLoopMask) + (e & 1));
      }
      stack.push_back({child, 0});
      if (term_of[static_cast<std::size_t>(child)] >= 0) {
        visit(static_cast<std::size_t>(term_of[static_cast<std::size_t>(child)]), dst);
      }
    }
  }
}

template <class Ring>
void split_terms(const Morphism<Ring>& a, std::vector<Diagram>& diagrams, std::vector<typename Ring::Value>& values) {
  auto sorted = a.sorted_terms();
  diagrams.reserve(sorted.size());
  values.reserve(sorted.size());
  for (auto& [d, v] : sorted) {
    diagrams.push_back(d);
    values.push_back(std::move(v));
  }
}

// ---------------------------------------------------------------------------
// Field products: plain accumulation of codes.

FieldMorphism compose_field(const FieldMorphism& a, const FieldMorphism& b) {
  const FieldRing& ring = a.ring();
  const PointedField& k = *ring.field;
  std::vector<Diagram> ld, rd;
  std::vector<std::uint32_t> lv, rv;
  split_terms(a, ld, lv);
  split_terms(b, rd, rv);
  const int max_loops = a.target() / 2 + 1;
  std::vector<std::uint32_t> delta_pow(static_cast<std::size_t>(max_loops) + 1, 1);
  for (std::size_t i = 1; i < delta_pow.size(); ++i) delta_pow[i] = k.mul(delta_pow[i - 1], k.delta_code());
  ResultIndex index(a.source(), b.target());
  const bool small_prime = k.degree() == 1 && k.characteristic() < (1u << 16);
  std::vector<std::uint64_t> acc;
  std::vector<std::uint32_t> scaled(delta_pow.size());
  auto ensure = [&](std::size_t size) {
    if (acc.size() < size) acc.resize(std::max<std::size_t>(size, acc.size() * 2), 0);
  };
  if (index.dense()) ensure(index.capacity());
  enumerate_products(ld, rd, a.source(), a.target(), b.target(), index, [&](std::size_t x, const std::uint32_t* st) {
    for (std::size_t l = 0; l < scaled.size(); ++l) scaled[l] = k.mul(lv[x], delta_pow[l]);
    if (!index.dense()) ensure(index.capacity());
    if (small_prime) {
      for (std::size_t y = 0; y < rd.size(); ++y) {
        acc[st[y] >> kLoopBits] += static_cast<std::uint64_t>(scaled[st[y] & kLoopMask]) * rv[y];
      }
    } else {
      for (std::size_t y = 0; y < rd.size(); ++y) {
        auto& slot = acc[st[y] >> kLoopBits];
        slot = k.add(static_cast<std::uint32_t>(slot), k.mul(scaled[st[y] & kLoopMask], rv[y]));
      }
    }
  });
  FieldMorphism out(ring, a.source(), b.target());
  const std::uint64_t used = std::min<std::uint64_t>(acc.size(), index.capacity());
  for (std::uint64_t z = 0; z < used; ++z) {
    std::uint32_t v = small_prime ? static_cast<std::uint32_t>(acc[z] % k.characteristic())
                                  : static_cast<std::uint32_t>(acc[z]);
    if (v != 0) out.emplace_unchecked(index.diagram(static_cast<std::uint32_t>(z)), v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic products: numerators over a common denominator, packed by Kronecker
// substitution delta -> 2^W so that each coefficient is a single integer.

struct CommonDenominator {
  IntegerPolynomial den;
  std::vector<IntegerPolynomial> numerators;
};

CommonDenominator clear_denominators(const std::vector<RationalFunction>& values) {
  CommonDenominator out;
  out.den = IntegerPolynomial(1);
  std::unordered_map<std::size_t, std::vector<IntegerPolynomial>> seen;
  std::vector<IntegerPolynomial> distinct;
  for (const auto& v : values) {
    const IntegerPolynomial& d = v.den();
    auto& bucket = seen[d.hash()];
    if (std::find(bucket.begin(), bucket.end(), d) != bucket.end()) continue;
    bucket.push_back(d);
    if (out.den.try_divexact(d)) continue;
    IntegerPolynomial g = gcd(out.den, d);
    out.den = out.den * d.divexact(g);
  }
  std::unordered_map<std::size_t, std::vector<std::pair<IntegerPolynomial, IntegerPolynomial>>> cofactors;
  out.numerators.reserve(values.size());
  for (const auto& v : values) {
    auto& bucket = cofactors[v.den().hash()];
    auto it = std::find_if(bucket.begin(), bucket.end(), [&](const auto& e) { return e.first == v.den(); });
    if (it == bucket.end()) {
      bucket.emplace_back(v.den(), out.den.divexact(v.den()));
      it = std::prev(bucket.end());
    }
    out.numerators.push_back(it->second.is_one() ? v.num() : v.num() * it->second);
  }
  return out;
}

BigInt pack(const IntegerPolynomial& p, std::size_t bits) {
  BigInt r = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
    r += *it;
  }
  return r;
}

IntegerPolynomial unpack(BigInt v, std::size_t bits) {
  std::vector<BigInt> coeffs;
  BigInt half;
  mpz_setbit(half.get_mpz_t(), bits - 1);
  BigInt full;
  mpz_setbit(full.get_mpz_t(), bits);
  while (v != 0) {
    BigInt d;
    mpz_fdiv_r_2exp(d.get_mpz_t(), v.get_mpz_t(), bits);
    if (d >= half) d -= full;
    coeffs.push_back(d);
    v -= d;
    mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
  }
  return IntegerPolynomial(std::move(coeffs));
}

// Limb image of the positive and negative parts of a polynomial, W bits per coefficient.
struct Packed {
  std::vector<mp_limb_t> pos;
  std::vector<mp_limb_t> neg;
};

Packed pack_limbs(const IntegerPolynomial& p, std::size_t limbs_per_coeff) {
  Packed out;
  const std::size_t len = p.coeffs().size() * limbs_per_coeff;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const BigInt& c = p.coeffs()[i];
    if (c == 0) continue;
    auto& dst = c > 0 ? out.pos : out.neg;
    if (dst.empty()) dst.assign(len, 0);
    const mpz_srcptr z = c.get_mpz_t();
    for (std::size_t l = 0; l < mpz_size(z); ++l) dst[i * limbs_per_coeff + l] = mpz_getlimbn(z, static_cast<mp_size_t>(l));
  }
  auto trim = [](std::vector<mp_limb_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(out.pos);
  trim(out.neg);
  return out;
}

GenericMorphism compose_generic(const GenericMorphism& a, const GenericMorphism& b) {
  std::vector<Diagram> ld, rd;
  std::vector<RationalFunction> lv, rv;
  split_terms(a, ld, lv);
  split_terms(b, rd, rv);
  CommonDenominator ca = clear_denominators(lv);
  CommonDenominator cb = clear_denominators(rv);
  BigInt sa = 0, sb = 0;
  int deg_b = 0;
  for (const auto& p : ca.numerators) sa += p.norm1();
  for (const auto& p : cb.numerators) {
    sb += p.norm1();
    deg_b = std::max(deg_b, p.degree());
  }
  BigInt bound = sa * sb;
  const std::size_t limbs = (mpz_sizeinbase(bound.get_mpz_t(), 2) + 2 + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  const std::size_t bits = limbs * GMP_NUMB_BITS;
  const int max_loops = a.target() / 2 + 1;
  const std::size_t slot_len = static_cast<std::size_t>(deg_b + max_loops + 1) * limbs + 1;

  std::vector<Packed> right(rd.size());
  for (std::size_t y = 0; y < rd.size(); ++y) right[y] = pack_limbs(cb.numerators[y], limbs);

  ResultIndex index(a.source(), b.target());
  std::vector<BigInt> result;
  std::vector<mp_limb_t> stage;  // per id: slot_len positive limbs then slot_len negative limbs
  std::vector<char> touched_flag;
  std::vector<std::uint32_t> touched;
  auto ensure = [&](std::size_t size) {
    if (result.size() >= size) return;
    std::size_t target = std::max<std::size_t>(size, result.size() * 2);
    result.resize(target);
    stage.resize(target * slot_len * 2, 0);
    touched_flag.resize(target, 0);
  };
  if (index.dense()) ensure(index.capacity());
  BigInt scratch, pos_part, neg_part;
  enumerate_products(ld, rd, a.source(), a.target(), b.target(), index, [&](std::size_t x, const std::uint32_t* st) {
    if (!index.dense()) ensure(index.capacity());
    for (std::size_t y = 0; y < rd.size(); ++y) {
      const std::uint32_t id = st[y] >> kLoopBits;
      const std::size_t offset = (st[y] & kLoopMask) * limbs;
      mp_limb_t* slot = stage.data() + static_cast<std::size_t>(id) * slot_len * 2;
      if (!touched_flag[id]) {
        touched_flag[id] = 1;
        touched.push_back(id);
      }
      const Packed& p = right[y];
      if (!p.pos.empty()) {
        [[maybe_unused]] mp_limb_t carry =
            mpn_add_n(slot + offset, slot + offset, p.pos.data(), static_cast<mp_size_t>(p.pos.size()));
        if (carry) mpn_add_1(slot + offset + p.pos.size(), slot + offset + p.pos.size(),
                             static_cast<mp_size_t>(slot_len - offset - p.pos.size()), carry);
      }
      if (!p.neg.empty()) {
        mp_limb_t* nslot = slot + slot_len;
        [[maybe_unused]] mp_limb_t carry =
            mpn_add_n(nslot + offset, nslot + offset, p.neg.data(), static_cast<mp_size_t>(p.neg.size()));
        if (carry) mpn_add_1(nslot + offset + p.neg.size(), nslot + offset + p.neg.size(),
                             static_cast<mp_size_t>(slot_len - offset - p.neg.size()), carry);
      }
    }
    const BigInt packed_x = pack(ca.numerators[x], bits);
    for (std::uint32_t id : touched) {
      mp_limb_t* slot = stage.data() + static_cast<std::size_t>(id) * slot_len * 2;
      mpz_import(pos_part.get_mpz_t(), slot_len, -1, sizeof(mp_limb_t), 0, 0, slot);
      mpz_import(neg_part.get_mpz_t(), slot_len, -1, sizeof(mp_limb_t), 0, 0, slot + slot_len);
      mpz_sub(scratch.get_mpz_t(), pos_part.get_mpz_t(), neg_part.get_mpz_t());
      mpz_addmul(result[id].get_mpz_t(), scratch.get_mpz_t(), packed_x.get_mpz_t());
      std::memset(slot, 0, slot_len * 2 * sizeof(mp_limb_t));
      touched_flag[id] = 0;
    }
    touched.clear();
  });
  GenericMorphism out(GenericRing{}, a.source(), b.target());
  const IntegerPolynomial den = ca.den * cb.den;
  const std::size_t used = std::min<std::size_t>(result.size(), index.capacity());
  for (std::size_t z = 0; z < used; ++z) {
    if (result[z] == 0) continue;
    IntegerPolynomial num = unpack(std::move(result[z]), bits);
    out.emplace_unchecked(index.diagram(static_cast<std::uint32_t>(z)), RationalFunction(std::move(num), den));
  }
  return out;
}

template <class Ring>
Morphism<Ring> map_diagrams(const Morphism<Ring>& a, int source, int target, Diagram (*f)(const Diagram&)) {
  Morphism<Ring> out(a.ring(), source, target);
  out.reserve(a.size());
  for (const auto& [d, c] : a.terms()) out.emplace_unchecked(f(d), c);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

template <class Ring>
Morphism<Ring> linear(const Morphism<Ring>& a, const Morphism<Ring>& b, const typename Ring::Value& c1,
                      const typename Ring::Value& c2) {
  check_same_ring(a, b);
  if (a.source() != b.source() || a.target() != b.target()) throw ShapeMismatch("linear combination of different shapes");
  const Ring& ring = a.ring();
  Morphism<Ring> out(ring, a.source(), a.target());
  out.reserve(a.size() + b.size());
  if (!Ring::is_zero(c1)) {
    for (const auto& [d, c] : a.terms()) out.emplace_unchecked(d, ring.mul(c1, c));
  }
  if (!Ring::is_zero(c2)) {
    for (const auto& [d, c] : b.terms()) out.add_term(d, ring.mul(c2, c));
  }
  return out;
}

template <class Ring>
Morphism<Ring> operator+(const Morphism<Ring>& a, const Morphism<Ring>& b) {
  return linear(a, b, a.ring().one(), a.ring().one());
}

template <class Ring>
Morphism<Ring> operator-(const Morphism<Ring>& a, const Morphism<Ring>& b) {
  return linear(a, b, a.ring().one(), a.ring().neg(a.ring().one()));
}

template <class Ring>
Morphism<Ring> scale(const Morphism<Ring>& a, const typename Ring::Value& c) {
  Morphism<Ring> out(a.ring(), a.source(), a.target());
  if (Ring::is_zero(c)) return out;
  out.reserve(a.size());
  for (const auto& [d, v] : a.terms()) out.emplace_unchecked(d, a.ring().mul(c, v));
  return out;
}

template <class Ring>
Morphism<Ring> compose(const Morphism<Ring>& a, const Morphism<Ring>& b) {
  check_same_ring(a, b);
  if (a.target() != b.source()) {
    throw ShapeMismatch("cannot compose " + std::to_string(a.source()) + "->" + std::to_string(a.target()) +
                        " with " + std::to_string(b.source()) + "->" + std::to_string(b.target()));
  }
  if (a.is_zero() || b.is_zero()) return Morphism<Ring>(a.ring(), a.source(), b.target());
  if constexpr (std::is_same_v<Ring, FieldRing>) {
    return compose_field(a, b);
  } else {
    return compose_generic(a, b);
  }
}

template <class Ring>
Morphism<Ring> tensor(const Morphism<Ring>& top, const Morphism<Ring>& bottom) {
  check_same_ring(top, bottom);
  const Ring& ring = top.ring();
  Morphism<Ring> out(ring, top.source() + bottom.source(), top.target() + bottom.target());
  out.reserve(top.size() * bottom.size());
  for (const auto& [d1, c1] : top.terms()) {
    for (const auto& [d2, c2] : bottom.terms()) out.emplace_unchecked(tensor(d1, d2), ring.mul(c1, c2));
  }
  return out;
}

template <class Ring>
Morphism<Ring> tensor_id(const Morphism<Ring>& a, int k) {
  Morphism<Ring> out(a.ring(), a.source() + k, a.target() + k);
  out.reserve(a.size());
  const Diagram id = Diagram::identity(k);
  for (const auto& [d, c] : a.terms()) out.emplace_unchecked(tensor(d, id), c);
  return out;
}

template <class Ring>
Morphism<Ring> involute(const Morphism<Ring>& a) {
  return map_diagrams<Ring>(a, a.target(), a.source(), [](const Diagram& d) { return involute(d); });
}

template <class Ring>
Morphism<Ring> flip_vertical(const Morphism<Ring>& a) {
  return map_diagrams<Ring>(a, a.source(), a.target(), [](const Diagram& d) { return flip_vertical(d); });
}

template <class Ring>
Morphism<Ring> turn_up(const Morphism<Ring>& a, int k) {
  if (k < 0 || k > a.target()) throw std::invalid_argument("turn_up: k exceeds the target size");
  Morphism<Ring> out(a.ring(), a.source() + k, a.target() - k);
  out.reserve(a.size());
  for (const auto& [d, c] : a.terms()) out.emplace_unchecked(turn_up(d, k), c);
  return out;
}

template <class Ring>
Morphism<Ring> turn_down(const Morphism<Ring>& a, int k) {
  if (k < 0 || k > a.source()) throw std::invalid_argument("turn_down: k exceeds the source size");
  Morphism<Ring> out(a.ring(), a.source() - k, a.target() + k);
  out.reserve(a.size());
  for (const auto& [d, c] : a.terms()) out.emplace_unchecked(turn_down(d, k), c);
  return out;
}

template <class Ring>
Morphism<Ring> partial_trace(const Morphism<Ring>& a, int steps) {
  if (steps < 0 || steps > a.source() || steps > a.target()) {
    throw std::invalid_argument("partial trace needs a strand on both sides");
  }
  const Ring& ring = a.ring();
  std::vector<typename Ring::Value> delta_pow{ring.one()};
  for (int i = 0; i < steps; ++i) delta_pow.push_back(ring.mul(delta_pow.back(), ring.delta()));
  // Group by the traced diagram first so each output coefficient is one sum.
  std::unordered_map<Diagram, std::vector<std::pair<const typename Ring::Value*, int>>, DiagramHash> groups;
  for (const auto& [d, c] : a.terms()) {
    Diagram cur = d;
    int loops = 0;
    for (int s = 0; s < steps; ++s) {
      Composite t = trace_bottom(cur);
      cur = t.diagram;
      loops += t.loops;
    }
    groups[cur].emplace_back(&c, loops);
  }
  Morphism<Ring> out(ring, a.source() - steps, a.target() - steps);
  for (auto& [d, parts] : groups) {
    // Sum coefficients with equal loop count first, then scale once per count.
    std::map<int, typename Ring::Value> by_loops;
    for (const auto& [c, loops] : parts) {
      auto [it, inserted] = by_loops.try_emplace(loops, *c);
      if (!inserted) it->second = ring.add(it->second, *c);
    }
    typename Ring::Value total = ring.zero();
    for (const auto& [loops, c] : by_loops) total = ring.add(total, ring.mul(c, delta_pow[static_cast<std::size_t>(loops)]));
    if (!Ring::is_zero(total)) out.emplace_unchecked(d, std::move(total));
  }
  return out;
}

template <class Ring>
std::optional<typename Ring::Value> proportionality(const Morphism<Ring>& a, const Morphism<Ring>& b) {
  check_same_ring(a, b);
  if (b.is_zero() || a.source() != b.source() || a.target() != b.target()) return std::nullopt;
  if (a.is_zero()) return a.ring().zero();
  const auto& [d, c] = *b.terms().begin();
  auto c_of_a = a.coefficient_value(d);
  typename Ring::Value ratio = a.ring().div(c_of_a, c);
  if (scale(b, ratio) == a) return ratio;
  return std::nullopt;
}

template <class Ring>
int max_through_degree(const Morphism<Ring>& a) {
  int best = -1;
  for (const auto& [d, c] : a.terms()) best = std::max(best, d.through_degree());
  return best;
}

template <class Ring>
bool annihilated_by_generators(const Morphism<Ring>& a) {
  if (a.source() != a.target()) throw ShapeMismatch("annihilation test needs an endomorphism");
  const int n = a.source();
  for (int i = 1; i < n; ++i) {
    auto u = Morphism<Ring>::from_diagram(a.ring(), generator_u(n, i));
    if (!compose(u, a).is_zero()) return false;
    if (!compose(a, u).is_zero()) return false;
  }
  return true;
}

#define TL_INSTANTIATE(R)                                                                                       \
  template Morphism<R> linear(const Morphism<R>&, const Morphism<R>&, const R::Value&, const R::Value&);      \
  template Morphism<R> operator+(const Morphism<R>&, const Morphism<R>&);                                      \
  template Morphism<R> operator-(const Morphism<R>&, const Morphism<R>&);                                      \
  template Morphism<R> scale(const Morphism<R>&, const R::Value&);                                             \
  template Morphism<R> compose(const Morphism<R>&, const Morphism<R>&);                                        \
  template Morphism<R> tensor(const Morphism<R>&, const Morphism<R>&);                                         \
  template Morphism<R> tensor_id(const Morphism<R>&, int);                                                     \
  template Morphism<R> involute(const Morphism<R>&);                                                           \
  template Morphism<R> flip_vertical(const Morphism<R>&);                                                      \
  template Morphism<R> turn_up(const Morphism<R>&, int);                                                       \
  template Morphism<R> turn_down(const Morphism<R>&, int);                                                     \
  template Morphism<R> partial_trace(const Morphism<R>&, int);                                                 \
  template int max_through_degree(const Morphism<R>&);                                                         \
  template std::optional<R::Value> proportionality(const Morphism<R>&, const Morphism<R>&);                    \
  template bool annihilated_by_generators(const Morphism<R>&);

TL_INSTANTIATE(GenericRing)
TL_INSTANTIATE(FieldRing)

#undef TL_INSTANTIATE

FieldMorphism reduce_morphism(const GenericMorphism& a, const std::shared_ptr<const PointedField>& k) {
  FieldMorphism out(FieldRing(k), a.source(), a.target());
  for (const auto& [d, c] : a.sorted_terms()) {
    std::uint32_t den = k->evaluate(c.den());
    if (den == 0) throw DoesNotDescend(c, "coefficient of " + d.to_string());
    std::uint32_t v = k->mul(k->evaluate(c.num()), k->inv(den));
    if (v != 0) out.emplace_unchecked(d, v);
  }
  return out;
}

std::uint64_t cell_dim(int n, int m) {
  if (m < 0 || m > n || (n - m) % 2 != 0) throw std::invalid_argument("cell_dim needs m <= n of equal parity");
  // binom(n, j) - binom(n, j - 1) with j = (n - m) / 2.
  const int j = (n - m) / 2;
  BigInt a, b = 0;
  mpz_bin_uiui(a.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
  if (j > 0) mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j - 1));
  BigInt d = a - b;
  return d.get_ui();
}

namespace {

constexpr std::uint64_t kRankPrime = 4611686018427387847ULL;  // 2^62 - 57

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kRankPrime);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t eval_mod(const IntegerPolynomial& p, std::uint64_t t) {
  std::uint64_t r = 0;
  BigInt c;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    mpz_fdiv_r_ui(c.get_mpz_t(), it->get_mpz_t(), kRankPrime);
    r = (mulmod(r, t) + c.get_ui()) % kRankPrime;
  }
  return r;
}

// Rank of x -> x * e over F_q with delta = t; empty if some denominator vanishes at t.
std::optional<std::uint64_t> specialised_rank(const GenericMorphism& e, std::uint64_t t) {
  const int n = e.source();
  std::vector<Diagram> rd;
  std::vector<std::uint64_t> rv;
  for (const auto& [d, c] : e.sorted_terms()) {
    std::uint64_t den = eval_mod(c.den(), t);
    if (den == 0) return std::nullopt;
    rd.push_back(d);
    rv.push_back(mulmod(eval_mod(c.num(), t), powmod(den, kRankPrime - 2)));
  }
  const std::uint64_t dim = diagram_count(n, n);
  std::vector<Diagram> left = enumerate_diagrams(n, n);
  std::vector<std::uint64_t> tpow(static_cast<std::size_t>(n / 2 + 2), 1);
  for (std::size_t i = 1; i < tpow.size(); ++i) tpow[i] = mulmod(tpow[i - 1], t);
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<std::size_t> pivots;
  std::vector<std::uint64_t> row(dim);
  ResultIndex index(n, n);
  enumerate_products(left, rd, n, n, n, index, [&](std::size_t, const std::uint32_t* st) {
    if (basis.size() == dim) return;
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t y = 0; y < rd.size(); ++y) {
      auto& slot = row[st[y] >> kLoopBits];
      slot = (slot + mulmod(rv[y], tpow[st[y] & kLoopMask])) % kRankPrime;
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::uint64_t f = row[pivots[b]];
      if (f == 0) continue;
      const std::uint64_t g = kRankPrime - f;
      const auto& br = basis[b];
      for (std::size_t z = pivots[b]; z < dim; ++z) {
        if (br[z] != 0) row[z] = (row[z] + mulmod(g, br[z])) % kRankPrime;
      }
    }
    std::size_t p = 0;
    while (p < dim && row[p] == 0) ++p;
    if (p == dim) return;
    const std::uint64_t inv = powmod(row[p], kRankPrime - 2);
    for (std::size_t z = p; z < dim; ++z) row[z] = mulmod(row[z], inv);
    basis.push_back(row);
    pivots.push_back(p);
  });
  return basis.size();
}

}  // namespace

std::uint64_t left_ideal_rank(const GenericMorphism& e, std::uint64_t seed) {
  if (e.source() != e.target()) throw ShapeMismatch("left ideal rank needs an endomorphism");
  if (e.is_zero()) return 0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, kRankPrime - 1);
  auto sample = [&]() {
    for (;;) {
      if (auto r = specialised_rank(e, dist(rng))) return *r;
    }
  };
  // Specialisation can only lower the rank, so the largest value seen is the generic rank.
  std::uint64_t r1 = sample();
  std::uint64_t r2 = sample();
  if (r1 == r2) return r1;
  std::uint64_t r3 = sample();
  return std::max({r1, r2, r3});
}

std::uint64_t left_ideal_rank(const GenericMorphism& e) { return left_ideal_rank(e, 0x7e3779b97f4a7c15ULL); }

}  // namespace tl
