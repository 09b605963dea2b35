#ifndef BS_WORDS_HPP_
#define BS_WORDS_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "bs/error.hpp"

namespace bs {

  enum class Gen : std::uint8_t { a, t };

  char gen_char(Gen g) noexcept;

  struct Syllable {
    Gen       gen;
    mpz_class exp;

    friend bool operator==(Syllable const& x, Syllable const& y) {
      return x.gen == y.gen && x.exp == y.exp;
    }
  };

  // A freely reduced word in the free group on {a, t}: every exponent is
  // nonzero and adjacent syllables have distinct generators.
  class Word {
   public:
    Word() = default;

    static Word gen(Gen g, mpz_class const& e = 1);
    static Word a(mpz_class const& e = 1) {
      return gen(Gen::a, e);
    }
    static Word t(mpz_class const& e = 1) {
      return gen(Gen::t, e);
    }

    [[nodiscard]] std::vector<Syllable> const& syllables() const noexcept {
      return _syl;
    }
    [[nodiscard]] bool empty() const noexcept {
      return _syl.empty();
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _syl.size();
    }

    // Sum of |exponent| over all syllables (the letter length).
    [[nodiscard]] mpz_class length() const;

    // Appends a syllable, cancelling or merging with the last one.
    void push_back(Gen g, mpz_class const& e);
    void append(Word const& w);

    [[nodiscard]] Word inverse() const;
    [[nodiscard]] Word pow(mpz_class const& k, Limits const& lim = {}) const;

    friend Word operator*(Word x, Word const& y) {
      x.append(y);
      return x;
    }
    friend bool operator==(Word const&, Word const&) = default;

   private:
    std::vector<Syllable> _syl;
  };

  // Free reduction of an arbitrary syllable list (zero exponents allowed).
  Word free_reduce(std::span<Syllable const> syllables);

  struct ExpSums {
    mpz_class sigma_a;
    mpz_class sigma_t;

    friend bool operator==(ExpSums const&, ExpSums const&) = default;
  };

  ExpSums exp_sums(Word const& w);

  // Prints "a^2 t^-1 a", or "1" for the identity. The output parses back.
  std::string to_string(Word const& w);

  ////////////////////////////////////////////////////////////////////////
  // Commutator expressions
  ////////////////////////////////////////////////////////////////////////

  // Immutable expression tree. Commutators follow [x, y] = x^-1 y^-1 x y and
  // conjugation is on the right: x^y = y^-1 x y.
  class CommExpr {
   public:
    enum class Kind : std::uint8_t {
      gen,
      power,
      product,
      commutator,
      conjugate
    };

    static CommExpr gen(Gen g);
    static CommExpr power(CommExpr base, mpz_class k);
    static CommExpr product(std::vector<CommExpr> factors);
    static CommExpr commutator(CommExpr x, CommExpr y);
    static CommExpr conjugate(CommExpr x, CommExpr y);
    // The empty product.
    static CommExpr identity() {
      return product({});
    }

    [[nodiscard]] Kind kind() const noexcept;
    // Only meaningful for Kind::gen.
    [[nodiscard]] Gen generator() const noexcept;
    // Only meaningful for Kind::power.
    [[nodiscard]] mpz_class const& exponent() const noexcept;
    // Power: {base}; product: factors; commutator/conjugate: {x, y}.
    [[nodiscard]] std::span<CommExpr const> children() const noexcept;

    friend bool operator==(CommExpr const& x, CommExpr const& y);

   private:
    struct Node;
    explicit CommExpr(std::shared_ptr<Node const> node)
        : _node(std::move(node)) {}
    std::shared_ptr<Node const> _node;
  };

  // Grammar:
  //   expr := term+
  //   term := atom ("^" (int | atom))?
  //   atom := "a" | "t" | "A" | "T" | "1" | "(" expr ")" | "[" expr "," expr "]"
  //   int  := "-"? digit+
  // A = a^-1, T = t^-1, "1" is the identity and x^y is right conjugation.
  CommExpr parse_expr(std::string_view text, Limits const& lim = {});

  // Parses and evaluates in one step.
  Word parse_word(std::string_view text, Limits const& lim = {});

  std::string to_string(CommExpr const& e);

  Word eval_expr(CommExpr const& e, Limits const& lim = {});

  // Flattens nested products and unwraps single-factor products, so that
  // structurally equal expressions compare equal after a print/parse trip.
  CommExpr flatten(CommExpr const& e);

  // Maximal nesting of commutator brackets.
  std::size_t nesting_depth(CommExpr const& e);

  // Sound lower bound c such that every value of e lies in gamma_c: a
  // generator has class 1, [x, y] has class(x) + class(y), a product the
  // minimum of its factors, powers and conjugates keep the class of the base.
  // Expressions that are syntactically the identity return
  // kIdentityClass (they lie in every term).
  inline constexpr std::size_t kIdentityClass = static_cast<std::size_t>(-1);
  std::size_t gamma_class_bound(CommExpr const& e);

}  // namespace bs

#endif  // BS_WORDS_HPP_
