#include "tl/diagram.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace tl {

namespace {

constexpr int kN = Diagram::kMaxPoints;

struct BinomialTable {
  std::uint64_t c[kN + 1][kN + 1] = {};
  constexpr BinomialTable() {
    for (int n = 0; n <= kN; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

constexpr BinomialTable kBinomial{};

// Number of non-negative lattice paths of `len` +-1 steps from height h to 0.
std::uint64_t ballot(int len, int h) {
  if (h < 0 || h > len || (len - h) % 2 != 0) return 0;
  const int k = (len - h) / 2;
  std::uint64_t a = kBinomial.c[len][k];
  std::uint64_t b = k > 0 ? kBinomial.c[len][k - 1] : 0;
  return a - b;
}

void check_shape(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("diagram boundary sizes must be non-negative");
  if ((n + m) % 2 != 0) throw std::invalid_argument("diagram boundary sizes must have equal parity");
  if (n + m > kN) throw std::invalid_argument("diagram exceeds the supported boundary size");
}

}  // namespace

DiagramBuilder::DiagramBuilder(int source, int target) {
  check_shape(source, target);
  d_.source_ = static_cast<std::uint8_t>(source);
  d_.target_ = static_cast<std::uint8_t>(target);
}

bool is_planar_matching(int points, std::span<const int> pairing) {
  if (static_cast<int>(pairing.size()) != points) return false;
  std::vector<int> stack;
  for (int i = 0; i < points; ++i) {
    const int j = pairing[static_cast<std::size_t>(i)];
    if (j < 0 || j >= points || j == i) return false;
    if (pairing[static_cast<std::size_t>(j)] != i) return false;
    if (j > i) {
      stack.push_back(i);
    } else {
      if (stack.empty() || stack.back() != j) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

Diagram Diagram::from_pairing(int source, int target, std::span<const int> pairing) {
  check_shape(source, target);
  if (!is_planar_matching(source + target, pairing)) {
    throw std::invalid_argument("pairing is not a planar perfect matching");
  }
  DiagramBuilder b(source, target);
  for (int i = 0; i < source + target; ++i) b.join(i, pairing[static_cast<std::size_t>(i)]);
  return b.build();
}

Diagram Diagram::identity(int n) {
  DiagramBuilder b(n, n);
  for (int i = 0; i < n; ++i) b.join(i, 2 * n - 1 - i);
  return b.build();
}

Diagram Diagram::cap() { return nested_cap(1); }

Diagram Diagram::cup() { return involute(cap()); }

Diagram Diagram::nested_cap(int k) {
  DiagramBuilder b(2 * k, 0);
  for (int j = 0; j < k; ++j) b.join(j, 2 * k - 1 - j);
  return b.build();
}

std::vector<int> Diagram::pairing() const {
  return std::vector<int>(pairing_.begin(), pairing_.begin() + points());
}

int Diagram::through_degree() const {
  int t = 0;
  for (int i = 0; i < source_; ++i) {
    if (pairing_[static_cast<std::size_t>(i)] >= source_) ++t;
  }
  return t;
}

bool Diagram::is_identity() const { return source_ == target_ && through_degree() == source_; }

std::size_t Diagram::hash() const {
  std::uint64_t h = 1469598103934665603ULL ^ (static_cast<std::uint64_t>(source_) << 8 | target_);
  for (int i = 0; i < points(); ++i) {
    h ^= pairing_[static_cast<std::size_t>(i)];
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::strong_ordering operator<=>(const Diagram& a, const Diagram& b) {
  if (auto c = a.source_ <=> b.source_; c != 0) return c;
  if (auto c = a.target_ <=> b.target_; c != 0) return c;
  for (int i = 0; i < a.points(); ++i) {
    if (auto c = a.pairing_[static_cast<std::size_t>(i)] <=> b.pairing_[static_cast<std::size_t>(i)]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Diagram::to_string() const {
  std::ostringstream os;
  os << int(source_) << "->" << int(target_) << ":[";
  for (int i = 0; i < points(); ++i) os << (i ? "," : "") << int(pairing_[static_cast<std::size_t>(i)]);
  os << "]";
  return os.str();
}

Composite compose(const Diagram& f, const Diagram& g) {
  if (f.target() != g.source()) throw std::invalid_argument("composition boundary mismatch");
  const int n = f.source();
  const int m = f.target();
  const int r = g.target();
  const int fn = n + m;  // f labels
  // Middle point j is f label fn-1-j and g label j.
  std::array<bool, kN> seen{};
  DiagramBuilder out(n, r);
  std::array<bool, kN> done{};
  auto follow = [&](bool in_f, int label) -> int {
    // Returns the result label reached from an entry at `label` on side f/g.
    for (;;) {
      if (in_f) {
        const int q = f.partner(label);
        if (q < n) return q;
        const int j = fn - 1 - q;
        seen[static_cast<std::size_t>(j)] = true;
        in_f = false;
        label = j;
      } else {
        const int q = g.partner(label);
        if (q >= m) return n - m + q;
        seen[static_cast<std::size_t>(q)] = true;
        in_f = true;
        label = fn - 1 - q;
      }
    }
  };
  for (int s = 0; s < n; ++s) {
    if (done[static_cast<std::size_t>(s)]) continue;
    const int e = follow(true, s);
    out.join(s, e);
    done[static_cast<std::size_t>(s)] = done[static_cast<std::size_t>(e)] = true;
  }
  for (int t = m; t < m + r; ++t) {
    const int rl = n - m + t;
    if (done[static_cast<std::size_t>(rl)]) continue;
    const int e = follow(false, t);
    out.join(rl, e);
    done[static_cast<std::size_t>(rl)] = done[static_cast<std::size_t>(e)] = true;
  }
  int loops = 0;
  for (int j = 0; j < m; ++j) {
    if (seen[static_cast<std::size_t>(j)]) continue;
    ++loops;
    int cur = j;
    do {
      seen[static_cast<std::size_t>(cur)] = true;
      const int q = fn - 1 - f.partner(fn - 1 - cur);
      seen[static_cast<std::size_t>(q)] = true;
      cur = g.partner(q);
    } while (cur != j);
  }
  return {out.build(), loops};
}

Diagram tensor(const Diagram& top, const Diagram& bottom) {
  const int a = top.source();
  const int b = top.target();
  const int c = bottom.source();
  const int d = bottom.target();
  const int n = a + c;
  const int m = b + d;
  DiagramBuilder out(n, m);
  auto map_top = [&](int label) { return label < a ? label : n + m - 1 - (a + b - 1 - label); };
  auto map_bottom = [&](int label) { return label < c ? a + label : n + m - 1 - (b + (c + d - 1 - label)); };
  for (int i = 0; i < a + b; ++i) out.join(map_top(i), map_top(top.partner(i)));
  for (int i = 0; i < c + d; ++i) out.join(map_bottom(i), map_bottom(bottom.partner(i)));
  return out.build();
}

Diagram involute(const Diagram& f) {
  const int np = f.points();
  DiagramBuilder out(f.target(), f.source());
  for (int i = 0; i < np; ++i) out.join(np - 1 - i, np - 1 - f.partner(i));
  return out.build();
}

Diagram flip_vertical(const Diagram& f) {
  const int n = f.source();
  const int m = f.target();
  // Source i <-> n-1-i; target point j (label n+m-1-j) <-> target point m-1-j (label n+j).
  auto map = [&](int label) { return label < n ? n - 1 - label : n + (n + m - 1 - label); };
  DiagramBuilder out(n, m);
  for (int i = 0; i < n + m; ++i) out.join(map(i), map(f.partner(i)));
  return out.build();
}

Diagram generator_u(int n, int i) {
  if (i < 1 || i > n - 1) throw std::invalid_argument("generator index out of range");
  DiagramBuilder b(n, n);
  for (int s = 0; s < n; ++s) {
    if (s == i - 1 || s == i) continue;
    b.join(s, 2 * n - 1 - s);
  }
  b.join(i - 1, i);
  b.join(2 * n - 1 - (i - 1), 2 * n - 1 - i);
  return b.build();
}

Diagram turn_up(const Diagram& f, int k) {
  if (k < 0 || k > f.target()) throw std::invalid_argument("turn_up: k exceeds the target size");
  // Rotating every label by k moves the top k target points to the top of the source side.
  const int np = f.points();
  DiagramBuilder out(f.source() + k, f.target() - k);
  for (int i = 0; i < np; ++i) out.join((i + k) % np, (f.partner(i) + k) % np);
  return out.build();
}

Diagram turn_down(const Diagram& f, int k) {
  if (k < 0 || k > f.source()) throw std::invalid_argument("turn_down: k exceeds the source size");
  const int np = f.points();
  if (np == 0) return f;
  DiagramBuilder out(f.source() - k, f.target() + k);
  for (int i = 0; i < np; ++i) out.join((i - k + np) % np, (f.partner(i) - k + np) % np);
  return out.build();
}

Composite trace_bottom(const Diagram& f) {
  const int n = f.source();
  const int m = f.target();
  if (n < 1 || m < 1) throw std::invalid_argument("partial trace needs a strand on both sides");
  // The bottom source point (label n-1) and the bottom target point (label n) are adjacent.
  auto relabel = [&](int label) { return label < n - 1 ? label : label - 2; };
  DiagramBuilder out(n - 1, m - 1);
  const int a = f.partner(n - 1);
  const int b = f.partner(n);
  int loops = 0;
  if (a == n) {
    loops = 1;
  } else {
    out.join(relabel(a), relabel(b));
  }
  for (int i = 0; i < n + m; ++i) {
    if (i == n - 1 || i == n || i == a || i == b) continue;
    out.join(relabel(i), relabel(f.partner(i)));
  }
  return {out.build(), loops};
}

std::uint64_t catalan(int k) { return ballot(2 * k, 0); }

std::uint64_t diagram_count(int n, int m) {
  check_shape(n, m);
  return ballot(n + m, 0);
}

std::uint64_t diagram_rank(const Diagram& f) {
  const int np = f.points();
  std::uint64_t rank = 0;
  int h = 0;
  for (int i = 0; i < np; ++i) {
    if (f.partner(i) > i) {
      ++h;
    } else {
      rank += ballot(np - i - 1, h + 1);
      --h;
    }
  }
  return rank;
}

Diagram diagram_unrank(int n, int m, std::uint64_t rank) {
  check_shape(n, m);
  const int np = n + m;
  if (rank >= ballot(np, 0)) throw std::out_of_range("diagram rank out of range");
  DiagramBuilder out(n, m);
  std::array<int, kN> stack{};
  int h = 0;
  for (int i = 0; i < np; ++i) {
    const std::uint64_t c = ballot(np - i - 1, h + 1);
    if (rank < c) {
      stack[static_cast<std::size_t>(h++)] = i;
    } else {
      rank -= c;
      out.join(stack[static_cast<std::size_t>(--h)], i);
    }
  }
  return out.build();
}

std::vector<Diagram> enumerate_diagrams(int n, int m) {
  const std::uint64_t count = diagram_count(n, m);
  std::vector<Diagram> out;
  out.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) out.push_back(diagram_unrank(n, m, r));
  return out;
}

std::unordered_map<Diagram, std::vector<int>, DiagramHash> u_words(int n) {
  std::unordered_map<Diagram, std::vector<int>, DiagramHash> seen;
  std::deque<Diagram> queue;
  seen.emplace(Diagram::identity(n), std::vector<int>{});
  queue.push_back(Diagram::identity(n));
  while (!queue.empty()) {
    const Diagram x = queue.front();
    queue.pop_front();
    for (int i = 1; i < n; ++i) {
      const Composite c = compose(generator_u(n, i), x);
      if (c.loops != 0 || seen.count(c.diagram)) continue;
      std::vector<int> w{i};
      const auto& tail = seen.at(x);
      w.insert(w.end(), tail.begin(), tail.end());
      seen.emplace(c.diagram, std::move(w));
      queue.push_back(c.diagram);
    }
  }
  return seen;
}

std::vector<int> u_word(const Diagram& f) {
  if (f.target() != f.source()) throw std::invalid_argument("u_word needs an (n, n) diagram");
  return u_words(f.source()).at(f);
}

}  // namespace tl
