// Linear combinations of Temperley-Lieb diagrams over Q(delta) or a pointed field.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tl/diagram.hpp"
#include "tl/ring.hpp"

namespace tl {

/// Coefficients in Q(delta).
struct GenericRing {
  using Value = RationalFunction;
  using Scalar = RationalFunction;

  Value zero() const { return {}; }
  Value one() const { return 1; }
  Value delta() const { return IntegerPolynomial::delta(); }
  Value from_integer(long c) const { return c; }
  static bool is_zero(const Value& v) { return v.is_zero(); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value neg(const Value& a) const { return -a; }
  Value div(const Value& a, const Value& b) const { return a / b; }
  Value from_scalar(const Scalar& s) const { return s; }
  Scalar to_scalar(const Value& v) const { return v; }
  bool operator==(const GenericRing&) const { return true; }
  std::string to_string() const { return "Q(δ)"; }
};

/// Coefficients in a finite pointed field; values are element codes.
struct FieldRing {
  using Value = std::uint32_t;
  using Scalar = FieldElement;

  std::shared_ptr<const PointedField> field;

  explicit FieldRing(std::shared_ptr<const PointedField> k) : field(std::move(k)) {}

  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value delta() const { return field->delta_code(); }
  Value from_integer(long c) const { return field->reduce_integer(c); }
  static bool is_zero(Value v) { return v == 0; }
  Value add(Value a, Value b) const { return field->add(a, b); }
  Value sub(Value a, Value b) const { return field->sub(a, b); }
  Value mul(Value a, Value b) const { return field->mul(a, b); }
  Value neg(Value a) const { return field->neg(a); }
  Value div(Value a, Value b) const { return field->mul(a, field->inv(b)); }
  Value from_scalar(const Scalar& s) const;
  Scalar to_scalar(Value v) const { return field->element(v); }
  bool operator==(const FieldRing& o) const { return field == o.field || *field == *o.field; }
  std::string to_string() const { return field->to_string(); }
};

template <class Ring>
class Morphism {
 public:
  using Value = typename Ring::Value;
  using Scalar = typename Ring::Scalar;
  using TermMap = std::unordered_map<Diagram, Value, DiagramHash>;

  Morphism(Ring ring, int source, int target) : ring_(std::move(ring)), source_(source), target_(target) {}

  static Morphism identity(Ring ring, int n) {
    Morphism m(std::move(ring), n, n);
    m.add_term(Diagram::identity(n), m.ring_.one());
    return m;
  }
  static Morphism from_diagram(Ring ring, const Diagram& d) {
    Morphism m(std::move(ring), d.source(), d.target());
    m.add_term(d, m.ring_.one());
    return m;
  }

  const Ring& ring() const { return ring_; }
  int source() const { return source_; }
  int target() const { return target_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * d, dropping the entry if it cancels. Throws std::invalid_argument on a shape mismatch.
  void add_term(const Diagram& d, const Value& c);
  /// Inserts a term the caller knows is new and nonzero.
  void emplace_unchecked(const Diagram& d, Value c) { terms_.emplace(d, std::move(c)); }
  void reserve(std::size_t n) { terms_.reserve(n); }

  Scalar coefficient(const Diagram& d) const;
  Value coefficient_value(const Diagram& d) const;

  /// Terms in the canonical diagram order.
  std::vector<std::pair<Diagram, Value>> sorted_terms() const;

  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.ring_ == b.ring_ && a.source_ == b.source_ && a.target_ == b.target_ && a.terms_ == b.terms_;
  }

 private:
  Ring ring_;
  int source_;
  int target_;
  TermMap terms_;
};

using GenericMorphism = Morphism<GenericRing>;
using FieldMorphism = Morphism<FieldRing>;

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// c1 * a + c2 * b.
template <class Ring>
Morphism<Ring> linear(const Morphism<Ring>& a, const Morphism<Ring>& b, const typename Ring::Value& c1,
                      const typename Ring::Value& c2);
template <class Ring>
Morphism<Ring> operator+(const Morphism<Ring>& a, const Morphism<Ring>& b);
template <class Ring>
Morphism<Ring> operator-(const Morphism<Ring>& a, const Morphism<Ring>& b);
template <class Ring>
Morphism<Ring> scale(const Morphism<Ring>& a, const typename Ring::Value& c);

/// a : n -> m followed by b : m -> r, i.e. the product a * b with a on the source side.
template <class Ring>
Morphism<Ring> compose(const Morphism<Ring>& a, const Morphism<Ring>& b);
template <class Ring>
Morphism<Ring> operator*(const Morphism<Ring>& a, const Morphism<Ring>& b) {
  return compose(a, b);
}
template <class Ring>
Morphism<Ring> tensor(const Morphism<Ring>& top, const Morphism<Ring>& bottom);
template <class Ring>
Morphism<Ring> tensor_id(const Morphism<Ring>& a, int k);
template <class Ring>
Morphism<Ring> involute(const Morphism<Ring>& a);
template <class Ring>
Morphism<Ring> flip_vertical(const Morphism<Ring>& a);
template <class Ring>
Morphism<Ring> turn_up(const Morphism<Ring>& a, int k);
template <class Ring>
Morphism<Ring> turn_down(const Morphism<Ring>& a, int k);
/// tau^steps: closes the bottom strand `steps` times.
template <class Ring>
Morphism<Ring> partial_trace(const Morphism<Ring>& a, int steps = 1);

/// c with a = c * b, when b is nonzero and such a scalar exists.
template <class Ring>
std::optional<typename Ring::Value> proportionality(const Morphism<Ring>& a, const Morphism<Ring>& b);

template <class Ring>
int max_through_degree(const Morphism<Ring>& a);
/// u_i * a = 0 and a * u_i = 0 for every generator of TL_n.
template <class Ring>
bool annihilated_by_generators(const Morphism<Ring>& a);

/// Coefficient-wise reduction; throws DoesNotDescend naming the offending diagram.
FieldMorphism reduce_morphism(const GenericMorphism& a, const std::shared_ptr<const PointedField>& k);

/// dim TL_n * e, by rank over random specialisations of delta modulo a 62-bit prime.
std::uint64_t left_ideal_rank(const GenericMorphism& e);
std::uint64_t left_ideal_rank(const GenericMorphism& e, std::uint64_t seed);
/// Number of (n, m) diagrams with exactly m through strands.
std::uint64_t cell_dim(int n, int m);

extern template class Morphism<GenericRing>;
extern template class Morphism<FieldRing>;

}  // namespace tl
