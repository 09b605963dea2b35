#ifndef BS_FREEPROD_HPP_
#define BS_FREEPROD_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bs/britton.hpp"
#include "bs/error.hpp"
#include "bs/words.hpp"

namespace bs {

  // Syllable normal form in Z * Z_d = < a, t | a^d = 1 >: alternating
  // t-powers (nonzero) and a-powers (in [1, d-1]).
  struct FreeProdWord {
    std::int64_t          d;
    std::vector<Syllable> syllables;

    [[nodiscard]] bool is_identity() const noexcept {
      return syllables.empty();
    }

    friend bool operator==(FreeProdWord const&, FreeProdWord const&) = default;
  };

  FreeProdWord fp_normalize(std::int64_t d, Word const& w);
  Word         to_word(FreeProdWord const& w);
  std::string  to_string(FreeProdWord const& w);

  // c(k, l)^sign where c(k, l) = [t^k, a^l], k != 0, 1 <= l <= d - 1.
  struct BasisLetter {
    mpz_class    k;
    std::int64_t l;
    int          sign;

    friend bool operator==(BasisLetter const&, BasisLetter const&) = default;
  };

  // Freely reduced word in the free basis {[t^k, a^l]} of the Cartesian
  // subgroup of Z * Z_d.
  struct BasisWord {
    std::int64_t             d;
    std::vector<BasisLetter> letters;

    // Appends a letter with free cancellation.
    void push_back(BasisLetter x);

    [[nodiscard]] bool empty() const noexcept {
      return letters.empty();
    }

    friend bool operator==(BasisWord const&, BasisWord const&) = default;
  };

  // "c(k,l) c(k',l')^-1 ...", or "1" when empty.
  std::string to_string(BasisWord const& bw);

  // Rewrites an element of the Cartesian subgroup (t-exponent sum 0 and
  // a-exponent sum divisible by d) as a reduced word in the basis.
  BasisWord fp_rewrite_basis(std::int64_t d, FreeProdWord const& w);

  // Spells the basis word as a word in a and t; the BS parameters must have
  // gcd(|m|, |n|) equal to bw.d.
  Word lift_basis(BSParams const& p, BasisWord const& bw);
  // Same, without a parameter check.
  Word lift_basis(BasisWord const& bw);

  // g = a^{2mc} lift(basis) for BS(m, -m), with c = 0 for BS(m, m).
  struct CentralSplit {
    mpz_class c;
    BasisWord basis;
  };

  // Requires m >= 2, n = +-m and w in gamma_2 (t-sum 0 and a-sum 0 for
  // n = m, a-sum divisible by 2m for n = -m).
  CentralSplit split_central(BSParams const& p, Word const& w, Limits const& lim = {});

  // Reassembles a^{2mc} lift(basis) as a word.
  Word reassemble(BSParams const& p, CentralSplit const& s);

}  // namespace bs

#endif  // BS_FREEPROD_HPP_
