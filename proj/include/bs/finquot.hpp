#ifndef BS_FINQUOT_HPP_
#define BS_FINQUOT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "bs/britton.hpp"
#include "bs/error.hpp"
#include "bs/words.hpp"

// Finite p-group quotients of BS(m, n) and brute-force lower central series.
// A homomorphism maps gamma_i G into gamma_i Q, so an image outside gamma_i Q
// certifies that the element is outside gamma_i G.

namespace bs {

  // Hard cap on the order of any constructed quotient.
  inline constexpr std::uint64_t kMaxQuotientOrder = 10'000'000;

  class FinQuot {
   public:
    using Elem = std::uint64_t;

    enum class Kind : std::uint8_t { semidirect, wreath };

    // Z_{p^k} x|_u Z_{p^j}, elements t^y a^x with a t = t a^u. Requires
    // u = 1 (mod p) and u^{p^j} = 1 (mod p^k).
    static FinQuot semidirect(std::int64_t p, unsigned k, unsigned j, std::int64_t u);
    // Z_{p^e} wr Z_{p^j}; a is the base generator at coordinate 0 and t the
    // cyclic shift.
    static FinQuot wreath(std::int64_t p,
                          unsigned     e,
                          unsigned     j,
                          std::uint64_t max_order = kMaxQuotientOrder);

    [[nodiscard]] Kind kind() const noexcept {
      return _kind;
    }
    [[nodiscard]] std::int64_t p() const noexcept {
      return _p;
    }
    // k for the semidirect kind, e for the wreath kind.
    [[nodiscard]] unsigned k() const noexcept {
      return _k;
    }
    [[nodiscard]] unsigned j() const noexcept {
      return _j;
    }
    [[nodiscard]] std::int64_t u() const noexcept {
      return _u;
    }
    [[nodiscard]] std::uint64_t order() const noexcept {
      return _order;
    }

    [[nodiscard]] Elem identity() const noexcept {
      return 0;
    }
    [[nodiscard]] Elem a() const noexcept {
      return _a;
    }
    [[nodiscard]] Elem t() const noexcept {
      return _t;
    }

    [[nodiscard]] Elem mul(Elem x, Elem y) const;
    [[nodiscard]] Elem inv(Elem x) const;
    [[nodiscard]] Elem pow(Elem x, mpz_class const& e) const;
    [[nodiscard]] Elem comm(Elem x, Elem y) const;
    [[nodiscard]] Elem image(Word const& w) const;

    // t^-1 a^m t == a^n in the quotient.
    [[nodiscard]] bool relation_holds(std::int64_t m, std::int64_t n) const;

    // "Z_8 x|_3 Z_2" or "Z_2 wr Z_4"
    [[nodiscard]] std::string describe() const;
    [[nodiscard]] std::string elem_to_string(Elem x) const;

   private:
    FinQuot() = default;

    Kind                       _kind = Kind::semidirect;
    std::int64_t               _p    = 2;
    unsigned                   _k = 1, _j = 1;
    std::int64_t               _u     = 1;
    std::uint64_t              _order = 1;
    std::uint64_t              _base  = 1;  // p^k (semidirect) or p^e (wreath)
    std::uint64_t              _top   = 1;  // p^j
    std::vector<std::uint64_t> _upow;       // u^y mod p^k for y < p^j
    std::vector<std::uint64_t> _place;      // base^i for the wreath encoding
    Elem                       _a = 0, _t = 0;
  };

  // Semidirect quotient of BS(m, n) with u = n m^-1 mod p^k.
  FinQuot build_semidirect(std::int64_t p, unsigned k, unsigned j, BSParams const& params);
  FinQuot build_wreath(std::int64_t p, unsigned e, unsigned j);

  // gamma_1 >= gamma_2 >= ... until the series stabilises.
  class GammaChain {
   public:
    [[nodiscard]] std::size_t length() const noexcept {
      return _sizes.size();
    }
    [[nodiscard]] std::vector<std::uint64_t> const& sizes() const noexcept {
      return _sizes;
    }
    // Membership in gamma_i, i >= 1. Past the computed levels the last
    // (stable) term is used.
    [[nodiscard]] bool contains(std::size_t i, FinQuot::Elem x) const;
    // Elements of gamma_i in increasing order.
    [[nodiscard]] std::vector<FinQuot::Elem> elements(std::size_t i) const;
    [[nodiscard]] bool reaches_trivial() const noexcept {
      return !_sizes.empty() && _sizes.back() == 1;
    }

   private:
    friend GammaChain fq_gamma_series(FinQuot const&, std::uint64_t);
    std::vector<std::vector<bool>> _members;  // empty vector = whole group
    std::vector<std::uint64_t>     _sizes;
  };

  // Computes gamma_{i+1} as the normal closure of [x, a], [x, t] over normal
  // generators x of gamma_i.
  GammaChain fq_gamma_series(FinQuot const& q, std::uint64_t max_order = 1'000'000);

  bool is_prime(std::int64_t p);

  struct Budget {
    unsigned      max_k     = 6;
    unsigned      max_j     = 4;
    std::uint64_t max_order = 1'000'000;
  };

  struct Certificate {
    FinQuot::Kind              kind;
    std::int64_t               p;
    unsigned                   k;  // e for wreath quotients
    unsigned                   j;
    std::int64_t               u;  // semidirect twist, 1 for wreath
    std::string                quotient;
    FinQuot::Elem              image;
    std::string                image_text;
    std::uint64_t              i;
    std::vector<std::uint64_t> gamma_sizes;
  };

  // Candidate quotients in increasing order: semidirect products over
  // primes p | n - m with p not dividing m, and wreath products over primes
  // p^e | gcd(m, n) (these factor through a^d -> 1).
  std::vector<FinQuot> candidate_quotients(BSParams const& params, Budget const& budget);

  // Returns a certificate that w is not in gamma_i(BS(m, n)), or nothing when
  // no quotient in the budget separates it (inconclusive).
  std::optional<Certificate> certify_not_in_gamma(BSParams const& params,
                                                  Word const&     w,
                                                  std::uint64_t   i,
                                                  Budget const&   budget = {});

  // Rebuilds the quotient, recomputes the image and the series and checks the
  // verdict.
  bool verify_certificate(Certificate const& cert, BSParams const& params, Word const& w);

  nlohmann::json to_json(Certificate const& cert);

}  // namespace bs

#endif  // BS_FINQUOT_HPP_
