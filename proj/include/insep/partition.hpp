#pragma once

// Integer partitions viewed as multisets of positive integers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "insep/arith.hpp"

namespace insep {

/// A finite multiset of positive integers, stored weakly decreasing so that
/// multiset equality is sequence equality.
class Partition {
 public:
  Partition() = default;

  /// Accepts the parts in any order.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int x : parts_)
      if (x < 1) throw std::invalid_argument("partition parts must be >= 1");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// ℓ copies of a.
  static Partition uniform(int copies, int part) {
    return Partition(std::vector<int>(static_cast<std::size_t>(copies), part));
  }

  const std::vector<int>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  auto begin() const { return parts_.begin(); }
  auto end() const { return parts_.end(); }

  int largest() const { return parts_.empty() ? 0 : parts_.front(); }
  int smallest() const { return parts_.empty() ? 0 : parts_.back(); }

  int sum() const {
    int s = 0;
    for (int x : parts_) s += x;
    return s;
  }

  /// Number of parts equal to `value`.
  int multiplicity(int value) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), value));
  }

  /// Multiset of parts as a count vector indexed by part size (length sum()+1).
  std::vector<int> counts() const {
    std::vector<int> c(static_cast<std::size_t>(largest()) + 1, 0);
    for (int x : parts_) ++c[static_cast<std::size_t>(x)];
    return c;
  }

  /// All parts equal?
  bool is_uniform() const {
    return parts_.empty() || parts_.front() == parts_.back();
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << '}';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Partition& p) {
    return os << p.to_string();
  }

 private:
  std::vector<int> parts_;
};

inline int sum(const Partition& p) { return p.sum(); }

/// k·λ: every part multiplied by k.
inline Partition scale(int k, const Partition& p) {
  if (k < 1) throw std::invalid_argument("scale: k must be >= 1");
  std::vector<int> parts(p.parts());
  for (int& x : parts) x = static_cast<int>(checked_mul(x, k));
  return Partition(std::move(parts));
}

/// k*λ: multiset sum of k copies.
inline Partition repeat(int k, const Partition& p) {
  if (k < 1) throw std::invalid_argument("repeat: k must be >= 1");
  std::vector<int> parts;
  parts.reserve(p.size() * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) parts.insert(parts.end(), p.begin(), p.end());
  return Partition(std::move(parts));
}

/// Conjugate partition (transpose of the Young diagram).
inline Partition conjugate(const Partition& p) {
  std::vector<int> out;
  for (int i = 1; i <= p.largest(); ++i) {
    int c = 0;
    for (int x : p)
      if (x >= i) ++c;
    out.push_back(c);
  }
  return Partition(std::move(out));
}

/// Multiset union.
inline Partition merge(const Partition& a, const Partition& b) {
  std::vector<int> parts(a.parts());
  parts.insert(parts.end(), b.begin(), b.end());
  return Partition(std::move(parts));
}

/// If λ = k*λ' for some λ', returns λ'.
inline std::optional<Partition> divide_repetition(int k, const Partition& p) {
  std::vector<int> out;
  const auto c = p.counts();
  for (std::size_t v = c.size(); v-- > 1;) {
    if (c[v] % k != 0) return std::nullopt;
    out.insert(out.end(), static_cast<std::size_t>(c[v] / k), static_cast<int>(v));
  }
  return Partition(std::move(out));
}

/// Parses "{6,2,1}" (whitespace tolerated, any order, "{}" is empty).
inline Partition parse_partition(std::string_view text) {
  auto fail = [&](std::size_t pos, const std::string& msg) {
    throw std::invalid_argument("partition parse error at position " + std::to_string(pos) +
                                ": " + msg + " in \"" + std::string(text) + "\"");
  };
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '{') fail(i, "expected '{'");
  ++i;
  std::vector<int> parts;
  skip();
  if (i < text.size() && text[i] == '}') {
    ++i;
  } else {
    while (true) {
      skip();
      std::size_t start = i;
      long value = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + (text[i] - '0');
        if (value > 1'000'000) fail(start, "part too large");
        ++i;
      }
      if (i == start) fail(i, "expected a positive integer");
      if (value < 1) fail(start, "parts must be >= 1");
      parts.push_back(static_cast<int>(value));
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '}') {
        ++i;
        break;
      }
      fail(i, "expected ',' or '}'");
    }
  }
  skip();
  if (i != text.size()) fail(i, "trailing characters");
  return Partition(std::move(parts));
}

struct PartitionConstraints {
  int min_part = 1;
  std::optional<int> max_part;
  std::optional<int> num_parts;
};

/// Lazy stream of the partitions of w satisfying the constraints, in
/// lexicographically decreasing order of the weakly decreasing part sequence.
class PartitionStream {
 public:
  PartitionStream(int w, PartitionConstraints c) : w_(w), c_(c) {
    if (w < 0) throw std::invalid_argument("enumerate: w must be >= 0");
    min_ = std::max(1, c_.min_part);
    max_ = c_.max_part ? std::min(*c_.max_part, w_) : w_;
    if (c_.num_parts && *c_.num_parts < 0) max_ = 0;
    std::vector<int> first;
    if (fill(first, w_, max_)) current_ = std::move(first);
  }

  /// Returns the next partition, or nullopt once the stream is exhausted.
  std::optional<Partition> next() {
    if (!current_) return std::nullopt;
    Partition out(*current_);
    advance();
    return out;
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Partition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Partition*;
    using reference = const Partition&;

    iterator() = default;
    explicit iterator(PartitionStream* s) : s_(s) { ++*this; }
    reference operator*() const { return *value_; }
    pointer operator->() const { return &*value_; }
    iterator& operator++() {
      value_ = s_->next();
      if (!value_) s_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.s_ == b.s_; }

   private:
    PartitionStream* s_ = nullptr;
    std::optional<Partition> value_;
  };

  iterator begin() { return iterator(this); }
  iterator end() { return iterator(); }

 private:
  int slots_left(std::size_t used) const {
    return c_.num_parts ? *c_.num_parts - static_cast<int>(used) : -1;
  }

  // Can `rem` be written with parts in [min_, maxp] using exactly `slots`
  // parts (slots < 0: any number)?
  bool feasible(int rem, int maxp, int slots) const {
    if (rem == 0) return slots <= 0;
    if (slots == 0 || maxp < min_) return false;
    if (slots > 0) {
      return static_cast<long>(slots) * min_ <= rem &&
             rem <= static_cast<long>(slots) * maxp;
    }
    for (int k = 1; static_cast<long>(k) * min_ <= rem; ++k)
      if (rem <= static_cast<long>(k) * maxp) return true;
    return false;
  }

  // Appends the lexicographically largest completion; false if none exists.
  bool fill(std::vector<int>& prefix, int rem, int maxp) const {
    if (!feasible(rem, maxp, slots_left(prefix.size()))) return false;
    while (rem > 0) {
      int slots = slots_left(prefix.size());
      int x = std::min(maxp, rem);
      while (x >= min_ && !feasible(rem - x, x, slots < 0 ? -1 : slots - 1)) --x;
      if (x < min_) return false;
      prefix.push_back(x);
      rem -= x;
      maxp = x;
    }
    return true;
  }

  void advance() {
    std::vector<int>& cur = *current_;
    for (std::size_t i = cur.size(); i-- > 0;) {
      int prefix_sum = 0;
      for (std::size_t k = 0; k < i; ++k) prefix_sum += cur[k];
      for (int x = cur[i] - 1; x >= min_; --x) {
        std::vector<int> cand(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(i));
        cand.push_back(x);
        if (fill(cand, w_ - prefix_sum - x, x)) {
          cur = std::move(cand);
          return;
        }
      }
    }
    current_.reset();
  }

  int w_;
  PartitionConstraints c_;
  int min_ = 1;
  int max_ = 0;
  std::optional<std::vector<int>> current_;
};

inline PartitionStream enumerate(int w, PartitionConstraints c = {}) {
  return PartitionStream(w, c);
}

/// Eagerly collected form of enumerate().
inline std::vector<Partition> partitions_of(int w, PartitionConstraints c = {}) {
  std::vector<Partition> out;
  auto s = enumerate(w, c);
  while (auto p = s.next()) out.push_back(std::move(*p));
  return out;
}

}  // namespace insep

template <>
struct std::hash<insep::Partition> {
  std::size_t operator()(const insep::Partition& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : p) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};
