#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace amc {

using StateId = std::uint32_t;

// Dense bitset over the canonical state indices of one model.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe, bool full = false)
      : universe_(universe), words_((universe + 63) / 64, full ? ~0ULL : 0ULL) {
    trim();
  }

  static StateSet full(std::size_t universe) { return StateSet(universe, true); }

  std::size_t universe() const { return universe_; }

  bool contains(StateId q) const { return (words_[q >> 6] >> (q & 63)) & 1ULL; }
  void insert(StateId q) { words_[q >> 6] |= 1ULL << (q & 63); }
  void erase(StateId q) { words_[q >> 6] &= ~(1ULL << (q & 63)); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  StateSet& operator&=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  StateSet& subtract(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  StateSet complement() const {
    StateSet r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }

  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend bool operator==(const StateSet&, const StateSet&) = default;

  bool subset_of(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(static_cast<StateId>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<StateId> to_vector() const {
    std::vector<StateId> out;
    out.reserve(count());
    for_each([&](StateId q) { out.push_back(q); });
    return out;
  }

 private:
  void trim() {
    if (universe_ % 64 && !words_.empty()) words_.back() &= (1ULL << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace amc
