#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fgw/word.hpp"

namespace fgw {

// Endomorphism of F_n given by the images of the generators.
struct Endomorphism {
  int rank = 0;
  std::vector<Word> images;  // images[i] is the image of generator i+1, freely reduced

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;
};

Endomorphism identity_endomorphism(int rank);

struct not_an_automorphism : std::runtime_error {
  not_an_automorphism() : std::runtime_error("endomorphism is not an automorphism") {}
};

// Elementary Nielsen transformation on a tuple of words.
struct NielsenMove {
  enum class Kind { Swap, Invert, RightMultiply };
  Kind kind;
  int i = 0;         // 0-based entry acted on
  int j = 0;         // second entry for Swap / RightMultiply
  int sign = 1;      // exponent for RightMultiply: w_i <- w_i * w_j^sign
};

// Replaying `moves` on the standard tuple (x_1,...,x_n) reproduces the
// certified tuple.
struct NielsenCertificate {
  std::vector<NielsenMove> moves;
};

std::vector<Word> replay(const NielsenCertificate& cert, int rank);

// Substitute generator images and reduce.
Word apply(const Endomorphism& e, const Word& w);

// (f o g)(x) = f(g(x)); g acts first.
Endomorphism compose(const Endomorphism& f, const Endomorphism& g);

// Nielsen reduction: true iff the tuple is a basis of F_rank. On success and
// when `cert` is non-null, fills a certificate replaying to the input tuple.
bool is_basis(const std::vector<Word>& words, int rank, NielsenCertificate* cert = nullptr);

bool is_automorphism(const Endomorphism& e);

// Inverse computed by replaying the Nielsen certificate in reverse.
// Throws not_an_automorphism when e has no inverse.
Endomorphism invert_automorphism(const Endomorphism& e);

// Adjacent-generator swaps, single-generator inversions, and transvections
// x_i -> x_i x_j (i != j).
std::vector<Endomorphism> nielsen_generators(int rank);

}  // namespace fgw
