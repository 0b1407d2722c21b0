#include "fgw/morphism.hpp"

#include <algorithm>
#include <numeric>

namespace fgw {

Endomorphism identity_endomorphism(int rank) {
  if (rank < 1 || rank > kMaxRank) throw std::out_of_range("rank out of range");
  Endomorphism e;
  e.rank = rank;
  for (int i = 1; i <= rank; ++i) e.images.push_back(Word({Letter(i, +1)}));
  return e;
}

Word apply(const Endomorphism& e, const Word& w) {
  std::vector<Letter> out;
  for (const Letter& l : w.letters()) {
    if (l.gen < 1 || l.gen > e.rank) throw std::out_of_range("generator index out of range");
    const Word& img = e.images[l.gen - 1];
    if (l.sign > 0) {
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    } else {
      Word inv = invert(img);
      out.insert(out.end(), inv.letters().begin(), inv.letters().end());
    }
  }
  return reduce(Word(std::move(out)));
}

Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  if (f.rank != g.rank) throw std::invalid_argument("rank mismatch in compose");
  Endomorphism h;
  h.rank = f.rank;
  for (const Word& img : g.images) h.images.push_back(apply(f, img));
  return h;
}

namespace {

void apply_move(std::vector<Word>& tuple, const NielsenMove& m) {
  switch (m.kind) {
    case NielsenMove::Kind::Swap:
      std::swap(tuple[m.i], tuple[m.j]);
      break;
    case NielsenMove::Kind::Invert:
      tuple[m.i] = invert(tuple[m.i]);
      break;
    case NielsenMove::Kind::RightMultiply: {
      Word factor = m.sign > 0 ? tuple[m.j] : invert(tuple[m.j]);
      tuple[m.i] = concat(tuple[m.i], factor);
      break;
    }
  }
}

NielsenMove inverse_move(const NielsenMove& m) {
  NielsenMove inv = m;
  if (m.kind == NielsenMove::Kind::RightMultiply) inv.sign = -m.sign;
  return inv;
}

std::size_t total_length(const std::vector<Word>& tuple) {
  std::size_t s = 0;
  for (const Word& w : tuple) s += w.length();
  return s;
}

int compare_tuples(const std::vector<Word>& a, const std::vector<Word>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = compare_words(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

// True iff the tuple is the standard tuple up to permutation and inversion.
bool is_signed_permutation(const std::vector<Word>& tuple, int rank) {
  std::vector<bool> seen(rank + 1, false);
  for (const Word& w : tuple) {
    if (w.length() != 1) return false;
    int g = w.letters()[0].gen;
    if (seen[g]) return false;
    seen[g] = true;
  }
  return true;
}

// One multiplication step, recorded as elementary certificate moves.
// Left multiplications w_i <- w_j^sign w_i expand to invert/right/invert.
struct Candidate {
  std::vector<Word> tuple;
  std::vector<NielsenMove> moves;
};

std::vector<Candidate> multiplication_candidates(const std::vector<Word>& tuple) {
  std::vector<Candidate> out;
  int n = static_cast<int>(tuple.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int sign : {+1, -1}) {
        {
          Candidate c;
          c.tuple = tuple;
          NielsenMove m{NielsenMove::Kind::RightMultiply, i, j, sign};
          apply_move(c.tuple, m);
          c.moves = {m};
          out.push_back(std::move(c));
        }
        {
          Candidate c;
          c.tuple = tuple;
          NielsenMove mi{NielsenMove::Kind::Invert, i, 0, 1};
          NielsenMove mm{NielsenMove::Kind::RightMultiply, i, j, -sign};
          apply_move(c.tuple, mi);
          apply_move(c.tuple, mm);
          apply_move(c.tuple, mi);
          c.moves = {mi, mm, mi};
          out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Word> replay(const NielsenCertificate& cert, int rank) {
  std::vector<Word> tuple;
  for (int i = 1; i <= rank; ++i) tuple.push_back(Word({Letter(i, +1)}));
  for (const NielsenMove& m : cert.moves) apply_move(tuple, m);
  return tuple;
}

bool is_basis(const std::vector<Word>& words, int rank, NielsenCertificate* cert) {
  if (rank < 1 || rank > kMaxRank) throw std::out_of_range("rank out of range");
  if (static_cast<int>(words.size()) != rank) throw std::invalid_argument("tuple arity != rank");
  std::vector<Word> tuple;
  for (const Word& w : words) {
    if (w.max_generator() > rank) throw std::out_of_range("generator index out of range");
    tuple.push_back(reduce(w));
  }

  // Greedy Nielsen reduction. Prefer moves that strictly shrink total length,
  // breaking ties by the lexicographically least resulting tuple; when no
  // shrinking move exists, take length-preserving moves that still decrease
  // the tuple in the (length, lex) well-order, so the fixed point is Nielsen
  // reduced and a basis reduces all the way to single letters.
  std::vector<NielsenMove> trail;
  for (;;) {
    std::size_t len = total_length(tuple);
    const Candidate* best = nullptr;
    auto cands = multiplication_candidates(tuple);
    for (const Candidate& c : cands) {
      std::size_t clen = total_length(c.tuple);
      if (clen > len) continue;
      if (clen == len && compare_tuples(c.tuple, tuple) >= 0) continue;
      if (best == nullptr) {
        best = &c;
        continue;
      }
      std::size_t blen = total_length(best->tuple);
      if (clen < blen || (clen == blen && compare_tuples(c.tuple, best->tuple) < 0)) best = &c;
    }
    if (best == nullptr) break;
    for (const NielsenMove& m : best->moves) trail.push_back(m);
    tuple = best->tuple;
  }

  if (!is_signed_permutation(tuple, rank)) return false;

  if (cert != nullptr) {
    // The trail maps the input tuple to a signed permutation V. As
    // automorphisms, input = V_as_moves . reverse(inverted trail).
    cert->moves.clear();
    std::vector<int> target(rank);  // entry i holds generator g with sign
    std::vector<int> sign(rank);
    for (int i = 0; i < rank; ++i) {
      target[i] = tuple[i].letters()[0].gen - 1;
      sign[i] = tuple[i].letters()[0].sign;
    }
    // Permutation moves: bring generator target[i] into slot i via swaps.
    std::vector<int> slot(rank);  // slot[i]: which generator currently sits at i
    std::iota(slot.begin(), slot.end(), 0);
    for (int i = 0; i < rank; ++i) {
      int k = i;
      while (slot[k] != target[i]) ++k;
      if (k != i) {
        std::swap(slot[i], slot[k]);
        cert->moves.push_back({NielsenMove::Kind::Swap, i, k, 1});
      }
      if (sign[i] < 0) cert->moves.push_back({NielsenMove::Kind::Invert, i, 0, 1});
    }
    for (auto it = trail.rbegin(); it != trail.rend(); ++it)
      cert->moves.push_back(inverse_move(*it));
  }
  return true;
}

bool is_automorphism(const Endomorphism& e) {
  if (e.rank < 1) return false;
  return is_basis(e.images, e.rank);
}

Endomorphism invert_automorphism(const Endomorphism& e) {
  NielsenCertificate cert;
  if (!is_basis(e.images, e.rank, &cert)) throw not_an_automorphism();
  NielsenCertificate reversed;
  for (auto it = cert.moves.rbegin(); it != cert.moves.rend(); ++it)
    reversed.moves.push_back(inverse_move(*it));
  Endomorphism inv;
  inv.rank = e.rank;
  inv.images = replay(reversed, e.rank);
  for (Word& w : inv.images) w = reduce(w);
  return inv;
}

std::vector<Endomorphism> nielsen_generators(int rank) {
  if (rank < 1 || rank > kMaxRank) throw std::out_of_range("rank out of range");
  std::vector<Endomorphism> out;
  for (int i = 0; i + 1 < rank; ++i) {
    Endomorphism e = identity_endomorphism(rank);
    std::swap(e.images[i], e.images[i + 1]);
    out.push_back(std::move(e));
  }
  for (int i = 0; i < rank; ++i) {
    Endomorphism e = identity_endomorphism(rank);
    e.images[i] = invert(e.images[i]);
    out.push_back(std::move(e));
  }
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) {
      if (i == j) continue;
      Endomorphism e = identity_endomorphism(rank);
      e.images[i] = concat(e.images[i], Word({Letter(j + 1, +1)}));
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace fgw
