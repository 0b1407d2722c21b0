#include "fgw/word.hpp"

#include <algorithm>

namespace fgw {

bool Word::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (letters_[i - 1].cancels(letters_[i])) return false;
  return true;
}

int Word::max_generator() const {
  int m = 0;
  for (const Letter& l : letters_) m = std::max(m, static_cast<int>(l.gen));
  return m;
}

Word reduce(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.length());
  for (const Letter& l : w.letters()) {
    if (!out.empty() && out.back().cancels(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word concat(const Word& w1, const Word& w2) {
  std::vector<Letter> all = w1.letters();
  all.insert(all.end(), w2.letters().begin(), w2.letters().end());
  return reduce(Word(std::move(all)));
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(it->inverse());
  return Word(std::move(out));
}

bool equal(const Word& w1, const Word& w2) { return reduce(w1) == reduce(w2); }

namespace {
// Letter rank under a < A < b < B < ...
int letter_rank(const Letter& l) { return 2 * (l.gen - 1) + (l.sign < 0 ? 1 : 0); }
}  // namespace

int compare_words(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
  for (std::size_t i = 0; i < a.length(); ++i) {
    int ra = letter_rank(a.letters()[i]);
    int rb = letter_rank(b.letters()[i]);
    if (ra != rb) return ra < rb ? -1 : 1;
  }
  return 0;
}

}  // namespace fgw
