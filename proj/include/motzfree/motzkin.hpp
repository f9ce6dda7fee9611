#pragma once

// Reduced Motzkin words j_1...j_n (j_1 = j_n = 1, unit steps, positive letters)
// and their combinatorics: level return partitions, local maxima, adaptedness
// to label tuples and path classification.
//
// Positions are 0-based throughout the library; the CLI prints them 1-based.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motzfree/error.hpp"

namespace motzfree {

class MotzkinWord {
 public:
  static MotzkinWord validate(std::span<const int> letters) {
    if (letters.empty()) throw Error(Errc::empty_word, "a reduced Motzkin word has at least one letter");
    for (std::size_t k = 0; k < letters.size(); ++k)
      if (letters[k] < 1)
        throw Error(Errc::non_positive, "letter " + std::to_string(letters[k]) + " at position " + std::to_string(k + 1));
    if (letters.front() != 1 || letters.back() != 1)
      throw Error(Errc::bad_endpoint, "first and last letters must be 1");
    for (std::size_t k = 1; k < letters.size(); ++k) {
      const int step = letters[k] - letters[k - 1];
      if (step < -1 || step > 1)
        throw Error(Errc::bad_step, "step of size " + std::to_string(step) + " at position " + std::to_string(k + 1));
    }
    return MotzkinWord(std::vector<int>(letters.begin(), letters.end()));
  }

  static MotzkinWord validate(std::initializer_list<int> letters) {
    return validate(std::span<const int>(letters.begin(), letters.size()));
  }

  /// Digit string ("12321") when every letter is a single digit, otherwise a
  /// comma separated list ("1,2,...,10,...,1").
  static MotzkinWord parse(std::string_view text) {
    std::vector<int> letters;
    if (text.find(',') != std::string_view::npos) {
      std::size_t start = 0;
      while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        const auto item = text.substr(start, end - start);
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }))
          throw Error(Errc::invalid_argument, "malformed word '" + std::string(text) + "'");
        letters.push_back(std::stoi(std::string(item)));
        start = end + 1;
      }
    } else {
      for (char c : text) {
        if (c < '0' || c > '9') throw Error(Errc::invalid_argument, "malformed word '" + std::string(text) + "'");
        letters.push_back(c - '0');
      }
    }
    return validate(letters);
  }

  /// Step word over {U, H, D}; the empty step word is the word "1".
  static MotzkinWord from_steps(std::string_view steps) {
    std::vector<int> letters{1};
    for (char c : steps) {
      switch (c) {
        case 'U': letters.push_back(letters.back() + 1); break;
        case 'H': letters.push_back(letters.back()); break;
        case 'D': letters.push_back(letters.back() - 1); break;
        default: throw Error(Errc::invalid_argument, std::string("unknown step '") + c + "'");
      }
    }
    return validate(letters);
  }

  std::size_t size() const noexcept { return letters_.size(); }
  const std::vector<int>& letters() const noexcept { return letters_; }
  int operator[](std::size_t k) const { return letters_[k]; }
  int height() const { return *std::max_element(letters_.begin(), letters_.end()); }

  std::string to_string() const {
    const bool digits = height() <= 9;
    std::string s;
    for (std::size_t k = 0; k < letters_.size(); ++k) {
      if (!digits && k) s += ',';
      s += std::to_string(letters_[k]);
    }
    return s;
  }

  std::string steps() const {
    std::string s;
    for (std::size_t k = 1; k < letters_.size(); ++k)
      s += letters_[k] > letters_[k - 1] ? 'U' : letters_[k] < letters_[k - 1] ? 'D' : 'H';
    return s;
  }

  friend auto operator<=>(const MotzkinWord&, const MotzkinWord&) = default;
  friend bool operator==(const MotzkinWord&, const MotzkinWord&) = default;

 private:
  explicit MotzkinWord(std::vector<int> letters) : letters_(std::move(letters)) {}

  std::vector<int> letters_;
};

/// All reduced Motzkin words of length n in lexicographic order.
inline std::vector<MotzkinWord> enumerate_words(std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "word length must be positive");
  std::vector<MotzkinWord> out;
  std::vector<int> cur{1};
  cur.reserve(n);
  auto rec = [&](auto& self) -> void {
    if (cur.size() == n) {
      if (cur.back() == 1) out.push_back(MotzkinWord::validate(cur));
      return;
    }
    const std::size_t remaining = n - cur.size();
    for (int next = cur.back() - 1; next <= cur.back() + 1; ++next) {
      // the path must still be able to come back down to level 1
      if (next < 1 || static_cast<std::size_t>(next - 1) > remaining - 1) continue;
      cur.push_back(next);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// Weak local maxima j_{k-1} <= j_k >= j_{k+1}, one-sided at the endpoints.
/// The single-letter word has its only position as a local maximum.
inline std::vector<std::size_t> local_maxima(const MotzkinWord& w) {
  const auto& l = w.letters();
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < l.size(); ++k) {
    const bool left = k == 0 || l[k - 1] <= l[k];
    const bool right = k + 1 == l.size() || l[k] >= l[k + 1];
    if (left && right) out.push_back(k);
  }
  return out;
}

struct Block {
  int level = 0;
  std::vector<std::size_t> positions;

  bool singleton() const noexcept { return positions.size() == 1; }
  friend bool operator==(const Block&, const Block&) = default;
};

struct LevelReturnPartition {
  std::vector<Block> blocks;  // ordered by first position
  std::size_t word_length = 0;

  /// Index into `blocks` of the block holding position k.
  std::size_t block_of(std::size_t k) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (std::find(blocks[b].positions.begin(), blocks[b].positions.end(), k) != blocks[b].positions.end()) return b;
    throw Error(Errc::invalid_argument, "position outside the partition");
  }
};

inline LevelReturnPartition level_return_partition(const MotzkinWord& w) {
  const auto& l = w.letters();
  const int h = w.height();
  LevelReturnPartition pi;
  pi.word_length = l.size();
  for (int level = 1; level <= h; ++level) {
    Block current{level, {}};
    for (std::size_t k = 0; k < l.size(); ++k) {
      if (l[k] != level) continue;
      if (!current.positions.empty()) {
        const std::size_t prev = current.positions.back();
        // Between two consecutive members of S_j the letters are either all
        // above or all below j, so checking the first one decides the return.
        const bool linked = k - prev > 1 && l[prev + 1] > level;
        if (!linked) {
          pi.blocks.push_back(std::move(current));
          current = Block{level, {}};
        }
      }
      current.positions.push_back(k);
    }
    if (!current.positions.empty()) pi.blocks.push_back(std::move(current));
  }
  std::sort(pi.blocks.begin(), pi.blocks.end(),
            [](const Block& a, const Block& b) { return a.positions.front() < b.positions.front(); });
  return pi;
}

struct AdaptednessViolation {
  enum class Kind { label_uniformity, nested_alternation };
  Kind kind;
  std::size_t block;        // offending block (index into the partition)
  std::size_t first;        // positions carrying the conflicting labels
  std::size_t second;
  std::optional<std::size_t> nested_block;  // for nested_alternation

  std::string describe() const {
    if (kind == Kind::label_uniformity)
      return "labels differ at positions " + std::to_string(first + 1) + " and " + std::to_string(second + 1) +
             " of one block";
    return "block nested between positions " + std::to_string(first + 1) + " and " + std::to_string(second + 1) +
           " repeats their label";
  }
};

struct AdaptednessReport {
  bool adapted = true;
  std::optional<AdaptednessViolation> violation;
};

template <class Label>
void require_alternating(std::span<const Label> labels) {
  for (std::size_t k = 1; k < labels.size(); ++k)
    if (labels[k] == labels[k - 1])
      throw Error(Errc::not_alternating, "equal labels at positions " + std::to_string(k) + " and " + std::to_string(k + 1));
}

template <class Label>
AdaptednessReport is_adapted(const MotzkinWord& w, const LevelReturnPartition& pi, std::span<const Label> labels) {
  if (labels.size() != w.size())
    throw Error(Errc::length_mismatch,
                std::to_string(labels.size()) + " labels for a word of length " + std::to_string(w.size()));
  require_alternating(labels);
  using Kind = AdaptednessViolation::Kind;
  for (std::size_t b = 0; b < pi.blocks.size(); ++b) {
    const auto& pos = pi.blocks[b].positions;
    for (std::size_t s = 1; s < pos.size(); ++s)
      if (!(labels[pos[s]] == labels[pos[0]]))
        return {false, AdaptednessViolation{Kind::label_uniformity, b, pos[0], pos[s], std::nullopt}};
  }
  for (std::size_t b = 0; b < pi.blocks.size(); ++b) {
    const auto& outer = pi.blocks[b];
    for (std::size_t s = 1; s < outer.positions.size(); ++s) {
      const std::size_t p = outer.positions[s - 1], q = outer.positions[s];
      for (std::size_t c = 0; c < pi.blocks.size(); ++c) {
        const auto& inner = pi.blocks[c];
        if (inner.level != outer.level + 1) continue;
        if (inner.positions.front() <= p || inner.positions.back() >= q) continue;
        if (labels[inner.positions.front()] == labels[p])
          return {false, AdaptednessViolation{Kind::nested_alternation, b, p, q, c}};
      }
    }
  }
  return {};
}

template <class Label>
AdaptednessReport is_adapted(const MotzkinWord& w, std::span<const Label> labels) {
  return is_adapted(w, level_return_partition(w), labels);
}

template <class Label>
AdaptednessReport is_adapted(const MotzkinWord& w, const std::vector<Label>& labels) {
  return is_adapted(w, std::span<const Label>(labels));
}

enum class PathKind { flat, pyramid, pyramid_then_flat, other };

constexpr std::string_view to_string(PathKind k) noexcept {
  switch (k) {
    case PathKind::flat: return "flat";
    case PathKind::pyramid: return "pyramid";
    case PathKind::pyramid_then_flat: return "pyramid_then_flat";
    case PathKind::other: return "other";
  }
  return "other";
}

struct PathClass {
  PathKind kind = PathKind::other;
  std::optional<std::size_t> middle;  // apex of the pyramid part
  std::optional<std::size_t> split;   // first position of the flat tail
  bool pyramid_compatible = false;    // the word "1" is both flat and a pyramid

  /// Word length of the leading pyramid (2m - 1 for apex level m).
  std::size_t pyramid_length() const { return middle ? 2 * *middle + 1 : 0; }
};

inline PathClass classify_path(const MotzkinWord& w) {
  const auto& l = w.letters();
  const std::size_t n = l.size();
  if (std::all_of(l.begin(), l.end(), [](int j) { return j == 1; })) {
    PathClass c{PathKind::flat, std::nullopt, std::nullopt, n == 1};
    if (n == 1) c.middle = 0;
    return c;
  }
  std::size_t apex = 0;
  while (apex + 1 < n && l[apex + 1] == l[apex] + 1) ++apex;
  if (apex == 0) return {};
  const std::size_t end = 2 * apex;  // last position of the pyramid part
  if (end >= n) return {};
  for (std::size_t k = apex + 1; k <= end; ++k)
    if (l[k] != l[k - 1] - 1) return {};
  if (end + 1 == n) return {PathKind::pyramid, apex, std::nullopt, false};
  for (std::size_t k = end + 1; k < n; ++k)
    if (l[k] != 1) return {};
  return {PathKind::pyramid_then_flat, apex, end + 1, false};
}

inline std::uint64_t count_by_local_maxima(std::size_t n, std::size_t k) {
  std::uint64_t count = 0;
  for (const auto& w : enumerate_words(n))
    if (local_maxima(w).size() == k) ++count;
  return count;
}

}  // namespace motzfree
