#ifndef BS_AFFINE_HPP_
#define BS_AFFINE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bs/error.hpp"
#include "bs/words.hpp"

// Exact arithmetic in the solvable groups BS(1, n) through the faithful
// representation as pairs (k, b) in Z[1/n] x| Z, where (k, b) is the affine map
// x -> n^k x + b and a -> (0, 1), t -> (-1, 0). With this convention
// t^-1 a t = a^n and t^l a^s t^-l has translation s / n^l.

namespace bs {

  // num / n^l in Z[1/n], canonical: l == 0 or n does not divide num. For
  // n = +-1 the denominator exponent is always 0.
  class ZnElement {
   public:
    explicit ZnElement(std::int64_t n, mpz_class num = 0, std::uint64_t l = 0);

    [[nodiscard]] std::int64_t base() const noexcept {
      return _n;
    }
    [[nodiscard]] mpz_class const& num() const noexcept {
      return _num;
    }
    [[nodiscard]] std::uint64_t den_exp() const noexcept {
      return _l;
    }
    [[nodiscard]] bool is_zero() const noexcept {
      return _num == 0;
    }

    // Multiplication by n^k for any integer k.
    [[nodiscard]] ZnElement scaled(std::int64_t k) const;
    [[nodiscard]] ZnElement operator-() const;

    friend ZnElement operator+(ZnElement const& x, ZnElement const& y);
    friend ZnElement operator-(ZnElement const& x, ZnElement const& y) {
      return x + (-y);
    }
    friend bool operator==(ZnElement const&, ZnElement const&) = default;

   private:
    void canonicalize();

    std::int64_t  _n;
    mpz_class     _num;
    std::uint64_t _l;
  };

  // "num" or "num/n^l"
  std::string to_string(ZnElement const& x);

  struct AffineElem {
    std::int64_t k;  // scaling exponent, equal to minus the t-exponent sum
    ZnElement    b;  // translation

    friend bool operator==(AffineElem const&, AffineElem const&) = default;
  };

  std::string to_string(AffineElem const& g);

  AffineElem affine_identity(std::int64_t n);
  AffineElem compose(AffineElem const& x, AffineElem const& y);
  AffineElem inverse(AffineElem const& x);
  bool       is_identity(AffineElem const& x);

  AffineElem to_affine(std::int64_t n, Word const& w, Limits const& lim = {});

  // The unique word t^K a^l t^-R (K, R >= 0) representing g with K minimal,
  // i.e. n does not divide l whenever both K > 0 and R > 0.
  Word canonical_word(std::int64_t n, AffineElem const& g);

  // Weight in the lower central series: Finite(i) when g lies in gamma_i but
  // not gamma_{i+1}, Omega when it lies in every term.
  class Weight {
   public:
    static Weight finite(std::uint64_t i) {
      return Weight(i);
    }
    static Weight omega() {
      return Weight(0);
    }

    [[nodiscard]] bool is_omega() const noexcept {
      return _i == 0;
    }
    [[nodiscard]] std::uint64_t value() const noexcept {
      return _i;
    }
    // Is the element in gamma_c?
    [[nodiscard]] bool at_least(std::uint64_t c) const noexcept {
      return is_omega() || _i >= c;
    }

    friend bool operator==(Weight const&, Weight const&) = default;

   private:
    explicit Weight(std::uint64_t i) : _i(i) {}
    std::uint64_t _i;  // 0 encodes omega
  };

  // integer or "omega"
  std::string to_string(Weight const& w);

  // Rejects n == 0. For n == 1 (Z x Z) every nontrivial element has weight 1.
  Weight lcs_weight(std::int64_t n, AffineElem const& g);

  // The image of g in gamma_i / gamma_{i+1} = Z_{|n-1|}, as a residue in
  // [0, |n-1|). Requires |n-1| > 1, i >= 2 and g in gamma_i.
  mpz_class gamma_quot_image(std::int64_t n, std::uint64_t i, AffineElem const& g);

  // Prime factorisation of |x|, x != 0, by trial division.
  std::vector<std::pair<std::int64_t, unsigned>> factor(std::int64_t x);

  // p-adic valuation of x != 0.
  unsigned long valuation(mpz_class const& x, std::int64_t p);

}  // namespace bs

#endif  // BS_AFFINE_HPP_
