#ifndef BS_BRITTON_HPP_
#define BS_BRITTON_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bs/error.hpp"
#include "bs/words.hpp"

namespace bs {

  // Parameters of BS(m, n) = < a, t | t^-1 a^m t = a^n >.
  class BSParams {
   public:
    BSParams(std::int64_t m, std::int64_t n);

    [[nodiscard]] std::int64_t m() const noexcept {
      return _m;
    }
    [[nodiscard]] std::int64_t n() const noexcept {
      return _n;
    }
    // gcd(|m|, |n|) >= 1
    [[nodiscard]] std::int64_t d() const noexcept {
      return _d;
    }

    friend bool operator==(BSParams const&, BSParams const&) = default;

   private:
    std::int64_t _m;
    std::int64_t _n;
    std::int64_t _d;
  };

  std::string to_string(BSParams const& p);

  // Pinch-free HNN normal form a^r0 t^e1 a^r1 ... t^ek a^rk where
  // 0 <= ri < |m| after t^-1 and 0 <= ri < |n| after t. Two words are equal in
  // BS(m, n) iff their normal forms are identical.
  struct BrittonNF {
    struct Entry {
      int       eps;  // +1 or -1
      mpz_class r;

      friend bool operator==(Entry const&, Entry const&) = default;
    };

    mpz_class          r0 = 0;
    std::vector<Entry> tail;

    [[nodiscard]] bool is_identity() const noexcept {
      return r0 == 0 && tail.empty();
    }

    friend bool operator==(BrittonNF const&, BrittonNF const&) = default;
  };

  // Rewrites t^-1 a^{mq+r} -> a^{nq} t^-1 a^r and t a^{nq+r} -> a^{mq} t a^r
  // (Euclidean remainders) and cancels pinches. Throws LimitExceeded if an
  // intermediate exponent grows past lim.max_bits.
  BrittonNF normalize(BSParams const& p, Word const& w, Limits const& lim = {});

  BrittonNF nf_multiply(BSParams const&  p,
                        BrittonNF const& x,
                        BrittonNF const& y,
                        Limits const&    lim = {});
  BrittonNF nf_invert(BSParams const& p,
                      BrittonNF const& x,
                      Limits const&    lim = {});

  // Value of an expression computed bottom-up on normal forms, so powers
  // and nested commutators never expand to their full spelled-out words.
  BrittonNF nf_eval(BSParams const& p, CommExpr const& e, Limits const& lim = {});

  bool nf_equal(BSParams const& p,
                Word const&     u,
                Word const&     v,
                Limits const&   lim = {});

  // Checks the residue and no-pinch invariants.
  bool is_valid(BSParams const& p, BrittonNF const& nf);

  // The word spelled by a normal form.
  Word to_word(BrittonNF const& nf);

  // "a^3 (t^-1 a^2) (t)", zero exponents elided; the identity prints as "1".
  std::string to_string(BrittonNF const& nf);

  // Image in the abelianization <a, t | a^{n-m} = 1> = Z x Z_{|n-m|}.
  struct AbImage {
    mpz_class t_part;
    mpz_class a_part;
    // |n - m|; 0 when n == m (the a-coordinate is then a full integer).
    mpz_class modulus;

    friend bool operator==(AbImage const&, AbImage const&) = default;
  };

  AbImage abelianize(BSParams const& p, Word const& w);

  std::string to_string(AbImage const& ab);

}  // namespace bs

#endif  // BS_BRITTON_HPP_
