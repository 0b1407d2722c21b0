#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fgw {

// Generators are numbered 1..26 and printed a..z; their inverses print A..Z.
inline constexpr int kMaxRank = 26;

struct Letter {
  std::uint8_t gen = 1;  // 1..kMaxRank
  std::int8_t sign = 1;  // +1 or -1

  Letter() = default;
  Letter(int g, int s) : gen(static_cast<std::uint8_t>(g)), sign(static_cast<std::int8_t>(s)) {}

  Letter inverse() const { return Letter(gen, -sign); }
  bool cancels(const Letter& o) const { return gen == o.gen && sign == -o.sign; }

  friend bool operator==(const Letter&, const Letter&) = default;
};

// A word over the balanced alphabet. Plain value type; may be unreduced.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_reduced() const;

  // Largest generator index occurring, 0 for the empty word.
  int max_generator() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Free reduction by stack cancellation; the unique reduced representative.
Word reduce(const Word& w);

// Reduced juxtaposition w1 w2.
Word concat(const Word& w1, const Word& w2);

// Reverse the letters and invert each.
Word invert(const Word& w);

// Free equivalence: identical reduced forms.
bool equal(const Word& w1, const Word& w2);

// Total order on reduced words used for Nielsen tie-breaking:
// shorter first, then letterwise under a < A < b < B < ...
int compare_words(const Word& a, const Word& b);

}  // namespace fgw
