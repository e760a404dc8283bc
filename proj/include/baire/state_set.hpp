#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace baire {

using State = std::uint32_t;
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Sorted, duplicate-free set of state indices.
///
/// Ordering is lexicographic on the sorted member list, which is the order
/// table entries are serialized in.
class StateSet {
 public:
  using const_iterator = std::vector<State>::const_iterator;

  StateSet() = default;
  StateSet(std::initializer_list<State> members) : members_(members) { normalize(); }
  explicit StateSet(std::vector<State> members) : members_(std::move(members)) { normalize(); }

  template <typename It>
  StateSet(It first, It last) : members_(first, last) {
    normalize();
  }

  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  const_iterator begin() const noexcept { return members_.begin(); }
  const_iterator end() const noexcept { return members_.end(); }
  State front() const { return members_.front(); }
  State back() const { return members_.back(); }
  State operator[](std::size_t i) const { return members_[i]; }
  const std::vector<State>& members() const noexcept { return members_; }

  bool contains(State s) const { return std::binary_search(members_.begin(), members_.end(), s); }

  bool is_subset_of(const StateSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
  }

  bool intersects(const StateSet& other) const {
    auto a = members_.begin();
    auto b = other.members_.begin();
    while (a != members_.end() && b != other.members_.end()) {
      if (*a == *b) return true;
      if (*a < *b) ++a; else ++b;
    }
    return false;
  }

  void insert(State s) {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) members_.insert(it, s);
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(members_[i]);
    }
    return out + "}";
  }

  friend bool operator==(const StateSet&, const StateSet&) = default;
  friend std::strong_ordering operator<=>(const StateSet& a, const StateSet& b) {
    return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(),
                                                  b.members_.begin(), b.members_.end());
  }

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<State> members_;
};

/// Size first, then lexicographic; the order loop listings are reported in.
inline bool size_then_lex(const StateSet& a, const StateSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace baire
