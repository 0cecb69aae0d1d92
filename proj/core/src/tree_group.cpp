#include "cayley_ising/tree_group.hpp"

#include <algorithm>
#include <string>

#include "cayley_ising/errors.hpp"

namespace cayley_ising {

Vertex Vertex::from_word(std::span<const int> letters) {
  std::vector<std::uint8_t> w;
  w.reserve(letters.size());
  for (int letter : letters) {
    if (letter < 1 || letter > 3) {
      throw DomainError("generator index must be 1, 2 or 3, got " + std::to_string(letter));
    }
    if (!w.empty() && w.back() == letter) {
      throw DomainError("word is not reduced: repeated generator " + std::to_string(letter));
    }
    w.push_back(static_cast<std::uint8_t>(letter));
  }
  return Vertex(std::move(w));
}

Vertex Vertex::from_word(std::initializer_list<int> letters) {
  return from_word(std::span<const int>(letters.begin(), letters.size()));
}

Vertex Vertex::parent() const {
  if (word_.empty()) return *this;
  return Vertex(std::vector<std::uint8_t>(word_.begin(), word_.end() - 1));
}

std::string Vertex::to_string() const {
  if (word_.empty()) return "e";
  std::string s;
  s.reserve(word_.size());
  for (auto c : word_) s.push_back(static_cast<char>('0' + c));
  return s;
}

std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
  if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.word_.begin(), a.word_.end(), b.word_.begin(),
                                                b.word_.end());
}

Vertex multiply_generator(const Vertex& v, int generator) {
  if (generator < 1 || generator > 3) {
    throw DomainError("generator index must be 1, 2 or 3, got " + std::to_string(generator));
  }
  std::vector<std::uint8_t> w = v.word_;
  if (!w.empty() && w.back() == generator) {
    w.pop_back();
  } else {
    w.push_back(static_cast<std::uint8_t>(generator));
  }
  return Vertex(std::move(w));
}

std::vector<Vertex> direct_successors(const Vertex& v) {
  std::vector<Vertex> out;
  out.reserve(3);
  for (int i = 1; i <= 3; ++i) {
    if (i != v.last_letter()) out.push_back(multiply_generator(v, i));
  }
  return out;
}

std::vector<Vertex> neighbors(const Vertex& v) {
  std::vector<Vertex> out;
  if (!v.is_root()) out.push_back(v.parent());
  for (auto& s : direct_successors(v)) out.push_back(std::move(s));
  return out;
}

std::vector<std::pair<Vertex, Vertex>> ternary_sibling_pairs(const Vertex& z) {
  auto s = direct_successors(z);
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) out.emplace_back(s[i], s[j]);
  }
  return out;
}

std::vector<Vertex> Levels::ball() const {
  std::vector<Vertex> out;
  for (const auto& shell : shells) out.insert(out.end(), shell.begin(), shell.end());
  return out;
}

std::size_t shell_size(int m) { return m == 0 ? 1 : std::size_t{3} << (m - 1); }

std::size_t ball_size(int n) { return 1 + 3 * ((std::size_t{1} << n) - 1); }

Levels enumerate_levels(int n, int max_depth) {
  if (n < 0) throw DomainError("depth must be non-negative");
  if (n > max_depth) {
    throw ResourceLimitError("depth " + std::to_string(n) + " exceeds enumeration cap " +
                             std::to_string(max_depth));
  }
  Levels levels;
  levels.shells.push_back({Vertex{}});
  for (int m = 1; m <= n; ++m) {
    std::vector<Vertex> next;
    next.reserve(shell_size(m));
    // Successors of a shortlex-sorted shell come out sorted as well.
    for (const auto& v : levels.shells.back()) {
      for (auto& s : direct_successors(v)) next.push_back(std::move(s));
    }
    levels.shells.push_back(std::move(next));
  }
  return levels;
}

Ball::Ball(int n, int max_depth) : depth_(n) {
  Levels levels = enumerate_levels(n, max_depth);
  vertices_ = levels.ball();
  shell_offset_.push_back(0);
  for (const auto& shell : levels.shells) shell_offset_.push_back(shell_offset_.back() + shell.size());

  const std::size_t count = vertices_.size();
  parent_.assign(count, -1);
  child_offset_.assign(count + 1, 0);
  // Children of vertex i at level m sit contiguously in W_{m+1}, in the same
  // order as their parents, so a running cursor assigns them.
  std::size_t cursor = 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t nchild =
        vertices_[i].level() < static_cast<std::size_t>(n) ? (vertices_[i].is_root() ? 3 : 2) : 0;
    child_offset_[i + 1] = child_offset_[i] + nchild;
    for (std::size_t c = 0; c < nchild; ++c) {
      parent_[cursor] = static_cast<int>(i);
      child_index_.push_back(cursor);
      nn_bonds_.emplace_back(i, cursor);
      ++cursor;
    }
    auto kids = children(i);
    for (std::size_t a = 0; a < kids.size(); ++a) {
      for (std::size_t b = a + 1; b < kids.size(); ++b) ternary_bonds_.emplace_back(kids[a], kids[b]);
    }
  }
}

std::span<const std::size_t> Ball::children(std::size_t i) const {
  return std::span<const std::size_t>(child_index_).subspan(child_offset_[i],
                                                            child_offset_[i + 1] - child_offset_[i]);
}

std::size_t Ball::index_of(const Vertex& v) const {
  if (!contains(v)) throw DomainError("vertex " + v.to_string() + " is outside V_n");
  const int m = static_cast<int>(v.level());
  auto first = vertices_.begin() + static_cast<std::ptrdiff_t>(shell_begin(m));
  auto last = vertices_.begin() + static_cast<std::ptrdiff_t>(shell_end(m));
  auto it = std::lower_bound(first, last, v);
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool SubgroupDescriptor::contains(const Vertex& v) const {
  switch (kind_) {
    case Kind::FullGroup:
      return true;
    case Kind::EvenSubgroup:
      return in_even_subgroup(v);
    case Kind::AbstractFiniteIndex:
      break;
  }
  throw DomainError("membership is not materialized for abstract finite-index subgroups");
}

std::string SubgroupDescriptor::to_string() const {
  switch (kind_) {
    case Kind::FullGroup:
      return "full_group";
    case Kind::EvenSubgroup:
      return "even_subgroup";
    case Kind::AbstractFiniteIndex:
      return has_generator_ ? "finite_index_with_generator" : "finite_index_without_generator";
  }
  return "unknown";
}

}  // namespace cayley_ising
