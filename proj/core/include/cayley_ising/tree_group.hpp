#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cayley_ising {

// Depth limit for materializing V_n (|V_20| is about 3.1 million vertices).
inline constexpr int kMaxTreeDepth = 20;

// A vertex of the order-2 Cayley tree, identified with a reduced word over
// the three involutive generators a1, a2, a3 of G2 = Z2 * Z2 * Z2. The empty
// word is the root e. Letters are stored as 1, 2, 3.
class Vertex {
 public:
  Vertex() = default;

  // Throws DomainError if a letter is outside {1,2,3} or two adjacent
  // letters coincide.
  static Vertex from_word(std::span<const int> letters);
  static Vertex from_word(std::initializer_list<int> letters);

  std::span<const std::uint8_t> word() const { return word_; }
  std::size_t level() const { return word_.size(); }
  bool is_root() const { return word_.empty(); }
  int last_letter() const { return word_.empty() ? 0 : word_.back(); }

  // Word with the last letter removed. Root maps to itself.
  Vertex parent() const;

  // "e" for the root, otherwise the letters concatenated ("123").
  std::string to_string() const;

  // Shortlex: level first, then lexicographic on letters.
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b);
  friend bool operator==(const Vertex& a, const Vertex& b) = default;

 private:
  explicit Vertex(std::vector<std::uint8_t> w) : word_(std::move(w)) {}
  friend Vertex multiply_generator(const Vertex& v, int generator);

  std::vector<std::uint8_t> word_;
};

// Right multiplication v * a_i with a_i^2 = e.
Vertex multiply_generator(const Vertex& v, int generator);

// S(v): neighbours one level further from the root. Three for e, two otherwise.
std::vector<Vertex> direct_successors(const Vertex& v);

// All nearest neighbours (parent plus successors).
std::vector<Vertex> neighbors(const Vertex& v);

// Unordered pairs {x, y} with x, y in S(z), x != y (the >x,y< bonds below z).
std::vector<std::pair<Vertex, Vertex>> ternary_sibling_pairs(const Vertex& z);

// Membership in G2^(2), the index-2 subgroup of even-length words.
inline bool in_even_subgroup(const Vertex& v) { return v.level() % 2 == 0; }

struct Levels {
  std::vector<std::vector<Vertex>> shells;  // W_0 .. W_n, each in shortlex order

  int depth() const { return static_cast<int>(shells.size()) - 1; }
  // V_n = W_0 u ... u W_n in shortlex order.
  std::vector<Vertex> ball() const;
};

// Throws ResourceLimitError for n > max_depth and DomainError for n < 0.
Levels enumerate_levels(int n, int max_depth = kMaxTreeDepth);

// |W_m| and |V_n| in closed form.
std::size_t shell_size(int m);
std::size_t ball_size(int n);

// Dense, index-based layout of V_n used by enumeration and contraction.
// Vertex i has parent parent[i] (-1 for the root); shells are contiguous
// index ranges so the outer shell W_n occupies the highest indices.
class Ball {
 public:
  explicit Ball(int n, int max_depth = kMaxTreeDepth);

  int depth() const { return depth_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
  // Throws DomainError if v is not in V_n.
  std::size_t index_of(const Vertex& v) const;
  bool contains(const Vertex& v) const { return v.level() <= static_cast<std::size_t>(depth_); }

  int parent(std::size_t i) const { return parent_[i]; }
  std::span<const std::size_t> children(std::size_t i) const;

  std::size_t shell_begin(int m) const { return shell_offset_[m]; }
  std::size_t shell_end(int m) const { return shell_offset_[m + 1]; }

  // Nearest-neighbour bonds <x,y> (parent, child) inside V_n.
  const std::vector<std::pair<std::size_t, std::size_t>>& nn_bonds() const { return nn_bonds_; }
  // Ternary bonds >x,y< (sibling pairs) inside V_n.
  const std::vector<std::pair<std::size_t, std::size_t>>& ternary_bonds() const {
    return ternary_bonds_;
  }

 private:
  int depth_;
  std::vector<Vertex> vertices_;
  std::vector<int> parent_;
  std::vector<std::size_t> child_offset_;  // CSR into child_index_
  std::vector<std::size_t> child_index_;
  std::vector<std::size_t> shell_offset_;
  std::vector<std::pair<std::size_t, std::size_t>> nn_bonds_;
  std::vector<std::pair<std::size_t, std::size_t>> ternary_bonds_;
};

// Finite-index subgroup H0 of G2, reduced to what periodic-measure
// classification needs: its kind and whether I(H0) = H0 n {a1,a2,a3} is
// nonempty. Cosets are never materialized.
class SubgroupDescriptor {
 public:
  enum class Kind { FullGroup, EvenSubgroup, AbstractFiniteIndex };

  static SubgroupDescriptor full_group() { return {Kind::FullGroup, true}; }
  static SubgroupDescriptor even_subgroup() { return {Kind::EvenSubgroup, false}; }
  static SubgroupDescriptor abstract_finite_index(bool has_generator) {
    return {Kind::AbstractFiniteIndex, has_generator};
  }

  Kind kind() const { return kind_; }
  bool has_generator() const { return has_generator_; }

  // Only decidable for the concrete kinds; throws DomainError for
  // AbstractFiniteIndex.
  bool contains(const Vertex& v) const;

  std::string to_string() const;

 private:
  SubgroupDescriptor(Kind k, bool g) : kind_(k), has_generator_(g) {}
  Kind kind_;
  bool has_generator_;
};

}  // namespace cayley_ising
