#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "cayley_ising/errors.hpp"
#include "cayley_ising/tree_group.hpp"

using namespace cayley_ising;

namespace {

// Counting oracle: all words over {1,2,3} of length m, keep the reduced ones.
std::size_t count_reduced_words(int m) {
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= 3;
  std::size_t reduced = 0;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    int prev = 0;
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      const int letter = static_cast<int>(c % 3) + 1;
      c /= 3;
      if (letter == prev) ok = false;
      prev = letter;
    }
    reduced += ok;
  }
  return reduced;
}

}  // namespace

TEST_CASE("multiply_generator appends or cancels") {
  CHECK(multiply_generator(Vertex{}, 1) == Vertex::from_word({1}));
  CHECK(multiply_generator(Vertex::from_word({1, 2}), 2) == Vertex::from_word({1}));
  CHECK(multiply_generator(Vertex::from_word({1, 2}), 3) == Vertex::from_word({1, 2, 3}));
  CHECK_THROWS_AS(multiply_generator(Vertex{}, 4), DomainError);
}

TEST_CASE("multiply_generator is an involution") {
  const Levels levels = enumerate_levels(4);
  for (const auto& v : levels.ball()) {
    for (int i = 1; i <= 3; ++i) CHECK(multiply_generator(multiply_generator(v, i), i) == v);
  }
}

TEST_CASE("words must be reduced") {
  CHECK_THROWS_AS(Vertex::from_word({1, 1}), DomainError);
  CHECK_THROWS_AS(Vertex::from_word({0}), DomainError);
  CHECK(Vertex::from_word({2, 1, 2}).level() == 3);
  CHECK(Vertex{}.to_string() == "e");
  CHECK(Vertex::from_word({2, 1}).to_string() == "21");
}

TEST_CASE("direct successors") {
  CHECK(direct_successors(Vertex{}) ==
        std::vector<Vertex>{Vertex::from_word({1}), Vertex::from_word({2}), Vertex::from_word({3})});
  CHECK(direct_successors(Vertex::from_word({1})) ==
        std::vector<Vertex>{Vertex::from_word({1, 2}), Vertex::from_word({1, 3})});
  CHECK(direct_successors(Vertex::from_word({2, 1})) ==
        std::vector<Vertex>{Vertex::from_word({2, 1, 2}), Vertex::from_word({2, 1, 3})});
}

TEST_CASE("every vertex has three neighbours") {
  for (const auto& v : enumerate_levels(4).ball()) CHECK(neighbors(v).size() == 3);
}

TEST_CASE("ternary sibling pairs") {
  auto root_pairs = ternary_sibling_pairs(Vertex{});
  REQUIRE(root_pairs.size() == 3);
  CHECK(root_pairs[0] == std::pair{Vertex::from_word({1}), Vertex::from_word({2})});
  CHECK(root_pairs[1] == std::pair{Vertex::from_word({1}), Vertex::from_word({3})});
  CHECK(root_pairs[2] == std::pair{Vertex::from_word({2}), Vertex::from_word({3})});
  auto pairs = ternary_sibling_pairs(Vertex::from_word({1}));
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == std::pair{Vertex::from_word({1, 2}), Vertex::from_word({1, 3})});
}

TEST_CASE("level sizes match the counting oracle") {
  CHECK(count_reduced_words(2) == 6);
  CHECK(count_reduced_words(3) == 12);
  const Levels levels = enumerate_levels(6);
  for (int m = 0; m <= 6; ++m) {
    CHECK(levels.shells[m].size() == count_reduced_words(m));
    CHECK(levels.shells[m].size() == shell_size(m));
  }
  CHECK(enumerate_levels(1).ball().size() == 4);
  CHECK(enumerate_levels(2).ball().size() == 10);
  CHECK(enumerate_levels(3).ball().size() == 22);
  CHECK(ball_size(3) == 22);
}

TEST_CASE("enumeration order is shortlex and deterministic") {
  const auto ball = enumerate_levels(4).ball();
  for (std::size_t i = 1; i < ball.size(); ++i) CHECK(ball[i - 1] < ball[i]);
  CHECK(enumerate_levels(4).ball() == ball);
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_levels(kMaxTreeDepth + 1), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_levels(5, 4), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_levels(-1), DomainError);
}

TEST_CASE("even subgroup membership") {
  CHECK(in_even_subgroup(Vertex{}));
  CHECK_FALSE(in_even_subgroup(Vertex::from_word({1})));
  CHECK(in_even_subgroup(Vertex::from_word({1, 2})));
  CHECK(SubgroupDescriptor::even_subgroup().contains(Vertex::from_word({3, 1})));
  CHECK_FALSE(SubgroupDescriptor::even_subgroup().has_generator());
  CHECK(SubgroupDescriptor::full_group().has_generator());
  CHECK_THROWS_AS(SubgroupDescriptor::abstract_finite_index(true).contains(Vertex{}), DomainError);
}

TEST_CASE("Ball bond tables") {
  for (int n = 1; n <= 6; ++n) {
    const Ball ball(n);
    CHECK(ball.size() == ball_size(n));
    // Tree: |V_n| - 1 edges.
    CHECK(ball.nn_bonds().size() == ball.size() - 1);
    // 3 sibling pairs under the root, 1 under every other internal vertex.
    const std::size_t expected_ternary = n == 1 ? 3 : 3 + (ball_size(n - 1) - 1);
    CHECK(ball.ternary_bonds().size() == expected_ternary);

    // Against explicit pair enumeration over Vertex values.
    std::set<std::pair<Vertex, Vertex>> explicit_pairs;
    for (const auto& z : enumerate_levels(n - 1).ball()) {
      for (auto& p : ternary_sibling_pairs(z)) explicit_pairs.insert(p);
    }
    std::set<std::pair<Vertex, Vertex>> table_pairs;
    for (auto [x, y] : ball.ternary_bonds()) table_pairs.insert({ball.vertex(x), ball.vertex(y)});
    CHECK(table_pairs == explicit_pairs);

    for (std::size_t i = 1; i < ball.size(); ++i) {
      CHECK(ball.vertex(static_cast<std::size_t>(ball.parent(i))) == ball.vertex(i).parent());
      CHECK(ball.index_of(ball.vertex(i)) == i);
    }
  }
}
