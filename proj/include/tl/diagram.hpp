// Planar Temperley-Lieb diagrams as non-crossing perfect matchings.
//
// Boundary convention: a diagram n -> m has n + m boundary labels. Labels
// 0..n-1 are the source points read top to bottom, labels n..n+m-1 are the
// target points read bottom to top, so the labels run once around a circle.
// Target point j (counted from the top) therefore carries label n + m - 1 - j.
// Composition f * g glues f's targets to g's sources (f sits on the source
// side); tensor products stack the first factor above the second.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tl {

class Diagram {
 public:
  static constexpr int kMaxPoints = 48;

  /// The empty diagram 0 -> 0.
  Diagram() = default;

  /// Validates parity, involution and planarity; throws std::invalid_argument.
  static Diagram from_pairing(int source, int target, std::span<const int> pairing);
  static Diagram identity(int n);
  /// 2 -> 0, the two source points joined.
  static Diagram cap();
  /// 0 -> 2.
  static Diagram cup();
  /// 2k -> 0 with point j joined to point 2k-1-j.
  static Diagram nested_cap(int k);

  int source() const { return source_; }
  int target() const { return target_; }
  int points() const { return source_ + target_; }
  int partner(int label) const { return pairing_[static_cast<std::size_t>(label)]; }
  int target_label(int j) const { return source_ + target_ - 1 - j; }
  bool is_source_label(int label) const { return label < source_; }

  std::vector<int> pairing() const;
  int through_degree() const;
  bool is_identity() const;

  std::size_t hash() const;
  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ &&
           std::memcmp(a.pairing_.data(), b.pairing_.data(), static_cast<std::size_t>(a.points())) == 0;
  }
  /// Shape first, then lexicographic on the pairing array.
  friend std::strong_ordering operator<=>(const Diagram& a, const Diagram& b);

  /// Compact form "n->m:[...]".
  std::string to_string() const;

 private:
  friend class DiagramBuilder;
  std::uint8_t source_ = 0;
  std::uint8_t target_ = 0;
  std::array<std::uint8_t, kMaxPoints> pairing_{};
};

struct DiagramHash {
  std::size_t operator()(const Diagram& d) const { return d.hash(); }
};

/// Unchecked construction for internal algorithms that preserve planarity.
class DiagramBuilder {
 public:
  DiagramBuilder(int source, int target);
  void join(int a, int b) {
    d_.pairing_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
    d_.pairing_[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(a);
  }
  Diagram build() const { return d_; }

 private:
  Diagram d_;
};

bool is_planar_matching(int points, std::span<const int> pairing);

struct Composite {
  Diagram diagram;
  int loops = 0;
};

/// f : n -> m followed by g : m -> r. Throws std::invalid_argument on boundary mismatch.
Composite compose(const Diagram& f, const Diagram& g);
/// `top` : a -> b above `bottom` : c -> d, giving (a + c) -> (b + d).
Diagram tensor(const Diagram& top, const Diagram& bottom);
/// Cellular involution: reflection exchanging source and target.
Diagram involute(const Diagram& f);
/// Reverses the top-to-bottom order on both boundaries.
Diagram flip_vertical(const Diagram& f);
/// u_i in TL_n, joining strands i and i+1 (1-based, from the top).
Diagram generator_u(int n, int i);
/// Bends the top k target strands back to become the top k source strands.
Diagram turn_up(const Diagram& f, int k);
/// Inverse of turn_up: bends the top k source strands over to the target side.
Diagram turn_down(const Diagram& f, int k);
/// Closes the bottom source strand onto the bottom target strand.
Composite trace_bottom(const Diagram& f);

/// All (n, m) diagrams in ranking order.
std::vector<Diagram> enumerate_diagrams(int n, int m);
std::uint64_t diagram_count(int n, int m);
/// Position of f in enumerate_diagrams(f.source(), f.target()).
std::uint64_t diagram_rank(const Diagram& f);
Diagram diagram_unrank(int n, int m, std::uint64_t rank);

std::uint64_t catalan(int k);

/// A shortest word i_1 ... i_k with f = u_{i_1} * ... * u_{i_k} (1-based generators), empty for the
/// identity. Throws std::invalid_argument unless f is an (n, n) diagram.
std::vector<int> u_word(const Diagram& f);
/// Shortest words for every (n, n) diagram.
std::unordered_map<Diagram, std::vector<int>, DiagramHash> u_words(int n);

}  // namespace tl
