#pragma once

#include <random>
#include <vector>

#include "fgw/morphism.hpp"
#include "fgw/textio.hpp"
#include "fgw/word.hpp"

namespace fgwtest {

// Independent reduction oracle: delete adjacent inverse pairs in a caller
// supplied (possibly random) order until none remain.
inline fgw::Word naive_reduce(const fgw::Word& w, std::mt19937* rng = nullptr) {
  std::vector<fgw::Letter> ls = w.letters();
  for (;;) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i)
      if (ls[i].cancels(ls[i + 1])) hits.push_back(i);
    if (hits.empty()) break;
    std::size_t pick = hits[0];
    if (rng && hits.size() > 1) pick = hits[(*rng)() % hits.size()];
    ls.erase(ls.begin() + pick, ls.begin() + pick + 2);
  }
  return fgw::Word(ls);
}

inline fgw::Word random_word(std::mt19937& rng, int rank, int max_len) {
  std::vector<fgw::Letter> ls;
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i)
    ls.emplace_back(static_cast<int>(rng() % rank) + 1, rng() % 2 ? 1 : -1);
  return fgw::Word(ls);
}

// Random automorphism as a product of elementary Nielsen generators.
inline fgw::Endomorphism random_automorphism(std::mt19937& rng, int rank, int factors) {
  auto gens = fgw::nielsen_generators(rank);
  fgw::Endomorphism e = fgw::identity_endomorphism(rank);
  for (int i = 0; i < factors; ++i) e = fgw::compose(e, gens[rng() % gens.size()]);
  return e;
}

inline fgw::Word W(const char* s) { return fgw::parse_word(s); }
inline fgw::Endomorphism E(const char* s, int rank) { return fgw::parse_endomorphism(s, rank); }

}  // namespace fgwtest
