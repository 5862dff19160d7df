#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace tl;

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

// Composition by gluing boundary points and tracing connected components.
Composite compose_oracle(const Diagram& f, const Diagram& g) {
  const int n = f.source();
  const int m = f.target();
  const int r = g.target();
  const int off = n + m;
  UnionFind uf(off + m + r);
  for (int a = 0; a < n + m; ++a) uf.join(a, f.partner(a));
  for (int a = 0; a < m + r; ++a) uf.join(off + a, off + g.partner(a));
  for (int j = 0; j < m; ++j) uf.join(f.target_label(j), off + j);
  std::vector<int> outer(static_cast<std::size_t>(n + r));
  for (int a = 0; a < n; ++a) outer[a] = a;
  for (int j = 0; j < r; ++j) outer[static_cast<std::size_t>(n + r - 1 - j)] = off + g.target_label(j);
  std::vector<int> pairing(static_cast<std::size_t>(n + r), -1);
  std::set<int> seen;
  for (int a = 0; a < n + r; ++a) {
    seen.insert(uf.find(outer[a]));
    for (int b = 0; b < n + r; ++b)
      if (b != a && uf.find(outer[a]) == uf.find(outer[b])) pairing[a] = b;
  }
  std::set<int> all;
  for (int x = 0; x < off + m + r; ++x) all.insert(uf.find(x));
  return {Diagram::from_pairing(n, r, pairing), static_cast<int>(all.size() - seen.size())};
}

Diagram u(int n, int i) { return generator_u(n, i); }

}  // namespace

TEST_CASE("generator relations") {
  for (int n = 2; n <= 10; ++n) {
    for (int i = 1; i < n; ++i) {
      const Composite sq = compose(u(n, i), u(n, i));
      CHECK(sq.diagram == u(n, i));
      CHECK(sq.loops == 1);
      if (i + 1 < n) {
        const Composite a = compose(compose(u(n, i), u(n, i + 1)).diagram, u(n, i));
        CHECK(a.diagram == u(n, i));
        CHECK(a.loops == 0);
        const Composite b = compose(compose(u(n, i + 1), u(n, i)).diagram, u(n, i + 1));
        CHECK(b.diagram == u(n, i + 1));
        CHECK(b.loops == 0);
      }
      for (int j = i + 2; j < n; ++j) CHECK(compose(u(n, i), u(n, j)).diagram == compose(u(n, j), u(n, i)).diagram);
    }
  }
}

TEST_CASE("enumeration and ranking") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(4) == 14);
  CHECK(catalan(10) == 16796);
  CHECK(enumerate_diagrams(4, 2).size() == 5);
  CHECK(enumerate_diagrams(3, 3).size() == 5);
  CHECK_THROWS_AS(enumerate_diagrams(3, 0), std::invalid_argument);
  for (int n = 0; n <= 7; ++n) {
    for (int m = n % 2; m <= 7; m += 2) {
      const auto all = enumerate_diagrams(n, m);
      CHECK(all.size() == catalan((n + m) / 2));
      CHECK(diagram_count(n, m) == all.size());
      std::set<Diagram> distinct(all.begin(), all.end());
      CHECK(distinct.size() == all.size());
      for (std::size_t r = 0; r < all.size(); ++r) {
        CHECK(diagram_rank(all[r]) == r);
        CHECK(diagram_unrank(n, m, r) == all[r]);
        CHECK(is_planar_matching(n + m, all[r].pairing()));
      }
    }
  }
}

TEST_CASE("from_pairing validation") {
  CHECK_NOTHROW(Diagram::from_pairing(2, 2, std::vector<int>{1, 0, 3, 2}));
  CHECK_THROWS_AS(Diagram::from_pairing(2, 2, std::vector<int>{2, 3, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Diagram::from_pairing(2, 1, std::vector<int>{1, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Diagram::from_pairing(2, 2, std::vector<int>{1, 2, 0, 3}), std::invalid_argument);
  CHECK(Diagram::identity(3).through_degree() == 3);
  CHECK(u(4, 2).through_degree() == 2);
  CHECK(Diagram::nested_cap(2).through_degree() == 0);
  CHECK(Diagram::nested_cap(2).pairing() == std::vector<int>{3, 2, 1, 0});
}

TEST_CASE("composition matches a union-find oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::uniform_int_distribution<int> size(0, 6);
    const int n = size(rng);
    int m = size(rng);
    int r = size(rng);
    if ((n + m) % 2) ++m;
    if ((m + r) % 2) ++r;
    const Diagram f = tltest::random_diagram(rng, n, m);
    const Diagram g = tltest::random_diagram(rng, m, r);
    const Composite ours = compose(f, g);
    const Composite expected = compose_oracle(f, g);
    CHECK(ours.diagram == expected.diagram);
    CHECK(ours.loops == expected.loops);
  }
  CHECK_THROWS_AS(compose(Diagram::identity(2), Diagram::identity(3)), std::invalid_argument);
}

TEST_CASE("associativity and the involution") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Diagram a = tltest::random_diagram(rng, n, n);
    const Diagram b = tltest::random_diagram(rng, n, n);
    const Diagram c = tltest::random_diagram(rng, n, n);
    const Composite ab = compose(a, b);
    const Composite bc = compose(b, c);
    const Composite left = compose(ab.diagram, c);
    const Composite right = compose(a, bc.diagram);
    CHECK(left.diagram == right.diagram);
    CHECK(left.loops + ab.loops == right.loops + bc.loops);
    const Composite inv = compose(involute(b), involute(a));
    CHECK(involute(ab.diagram) == inv.diagram);
    CHECK(ab.loops == inv.loops);
    CHECK(involute(involute(a)) == a);
    CHECK(flip_vertical(flip_vertical(a)) == a);
    CHECK(flip_vertical(compose(a, b).diagram) == compose(flip_vertical(a), flip_vertical(b)).diagram);
  }
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i < n; ++i) {
      CHECK(involute(u(n, i)) == u(n, i));
      CHECK(flip_vertical(u(n, i)) == u(n, n - i));
    }
}

TEST_CASE("tensor products") {
  CHECK(tensor(Diagram::identity(1), Diagram::identity(2)) == Diagram::identity(3));
  CHECK(tensor(Diagram::cap(), Diagram::identity(1)) == Diagram::from_pairing(3, 1, std::vector<int>{1, 0, 3, 2}));
  CHECK(tensor(Diagram::identity(1), Diagram::cap()) == Diagram::from_pairing(3, 1, std::vector<int>{3, 2, 1, 0}));
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i < n; ++i) {
      CHECK(tensor(u(n, i), Diagram::identity(1)) == u(n + 1, i));
      CHECK(tensor(Diagram::identity(1), u(n, i)) == u(n + 1, i + 1));
    }
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 4);
    const Diagram a = tltest::random_diagram(rng, n, n);
    const Diagram b = tltest::random_diagram(rng, n, n);
    const Diagram c = tltest::random_diagram(rng, m, m);
    const Diagram d = tltest::random_diagram(rng, m, m);
    const Composite lhs = compose(tensor(a, c), tensor(b, d));
    const Composite ab = compose(a, b);
    const Composite cd = compose(c, d);
    CHECK(lhs.diagram == tensor(ab.diagram, cd.diagram));
    CHECK(lhs.loops == ab.loops + cd.loops);
    CHECK(tensor(a, c).through_degree() == a.through_degree() + c.through_degree());
  }
}

TEST_CASE("turning strands") {
  CHECK(turn_up(Diagram::identity(2), 1) == Diagram::from_pairing(3, 1, std::vector<int>{1, 0, 3, 2}));
  CHECK(turn_up(Diagram::identity(1), 1) == Diagram::cap());
  CHECK(turn_down(Diagram::cap(), 1) == Diagram::identity(1));
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = n + 2 * static_cast<int>(rng() % 2);
    const Diagram f = tltest::random_diagram(rng, n, m);
    for (int k = 0; k <= m; ++k) {
      const Diagram up = turn_up(f, k);
      CHECK(up.source() == n + k);
      CHECK(up.target() == m - k);
      CHECK(turn_down(up, k) == f);
    }
  }
}

TEST_CASE("closing the bottom strand") {
  const Composite id = trace_bottom(Diagram::identity(2));
  CHECK(id.diagram == Diagram::identity(1));
  CHECK(id.loops == 1);
  const Composite one = trace_bottom(Diagram::identity(1));
  CHECK(one.diagram == Diagram());
  CHECK(one.loops == 1);
  const Composite snake = trace_bottom(u(2, 1));
  CHECK(snake.diagram == Diagram::identity(1));
  CHECK(snake.loops == 0);
  const Composite u1 = trace_bottom(u(3, 1));
  CHECK(u1.diagram == u(2, 1));
  CHECK(u1.loops == 1);
  CHECK(trace_bottom(u(3, 2)).diagram == Diagram::identity(2));
  CHECK(trace_bottom(u(3, 2)).loops == 0);
}

TEST_CASE("shortest words") {
  CHECK(u_word(Diagram::identity(4)).empty());
  CHECK(u_word(u(4, 3)) == std::vector<int>{3});
  CHECK(u_word(compose(u(3, 1), u(3, 2)).diagram) == std::vector<int>{1, 2});
  for (int n = 2; n <= 7; ++n) {
    const auto words = u_words(n);
    CHECK(words.size() == catalan(n));
    for (const auto& [d, w] : words) {
      Diagram x = Diagram::identity(n);
      for (int i : w) {
        const Composite c = compose(x, u(n, i));
        CHECK(c.loops == 0);
        x = c.diagram;
      }
      CHECK(x == d);
    }
  }
}
