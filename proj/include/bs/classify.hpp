#ifndef BS_CLASSIFY_HPP_
#define BS_CLASSIFY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bs/britton.hpp"
#include "bs/words.hpp"

namespace bs {

  // Representative with 0 < m' <= |n'| under (m, n) -> (n, m) and
  // (m, n) -> (-m, -n).
  BSParams canonical_form(std::int64_t m, std::int64_t n);

  enum class LcsLength : std::uint8_t { two, omega, unknown };

  enum class GammaOmega : std::uint8_t {
    trivial,
    equals_closure,              // gamma_omega = <a^d>^G
    strictly_contains_closure,   // gamma_omega > <a^d>^G
    unknown
  };

  // Position of the group in rF_p (some p) < rN < rF.
  enum class ClassDiff : std::uint8_t {
    not_rf,
    rf_not_rn,  // residually finite, not residually nilpotent
    rn_not_rp,  // residually nilpotent, not residually p for any p
    rp          // residually p for some prime p
  };

  // "2", "omega", "unknown"
  std::string to_string(LcsLength x);
  // "Trivial", "EqualsNormalClosure", ...
  std::string to_string(GammaOmega x);
  std::string to_string(ClassDiff x);

  struct ResiduallyP {
    bool                      all_primes = false;  // BS(1, 1) = Z x Z
    std::vector<std::int64_t> primes;              // sorted, when !all_primes
    std::string               condition;

    [[nodiscard]] bool empty() const noexcept {
      return !all_primes && primes.empty();
    }
    [[nodiscard]] bool contains(std::int64_t p) const;
  };

  // "all", "-" for none, or "2;3".
  std::string to_string(ResiduallyP const& rp);

  struct ChainReport {
    // 1-3 from the sign of n - m against d; 0 when the group is residually
    // finite and the chain degenerates.
    int                      case_index = 0;
    std::vector<int>         refinements;  // 4 and/or 5
    std::vector<std::string> chains;
    std::vector<std::string> quotients;
  };

  ChainReport prop5_chain(std::int64_t m, std::int64_t n);

  struct ClassReport {
    std::int64_t m, n;
    BSParams     canonical;
    std::string  abelianization;  // "Z x Z_3", "Z x Z", "Z"
    bool         residually_finite;
    ResiduallyP  residually_p;
    bool         residually_nilpotent;
    bool         residually_torsionfree_nilpotent;
    LcsLength    lcs_length;
    GammaOmega   gamma_omega;
    ClassDiff    class_diff;
    ChainReport  chain;
  };

  ClassReport classify(std::int64_t m, std::int64_t n);

  // "EqualsNormalClosure(a^2)" etc.
  std::string gamma_omega_text(ClassReport const& r);

  // "Z x Z_k" for the abelianization <a, t | a^{n-m}>.
  std::string abelianization_descriptor(BSParams const& p);

  // The words [t^k a^d t^-k, a] for k = -K..K, freely reduced.
  std::vector<Word>     r_generators(BSParams const& p, std::int64_t K);
  std::vector<CommExpr> r_generator_exprs(BSParams const& p, std::int64_t K);

  struct ProbeReport {
    std::int64_t                d;
    std::int64_t                K;
    std::uint64_t               trials;
    std::uint64_t               nontrivial = 0;
    std::uint64_t               trivial    = 0;
    std::uint64_t               round_trip = 0;  // rewrite recovers the basis word
    std::vector<std::string>    failures;        // basis words mapping to 1
  };

  // Random nonempty reduced words of length 1..max_len in c(k, s) = [t^k, a^s],
  // 0 < |k| <= K, 1 <= s <= d - 1, checked to be nontrivial in Z * Z_d.
  ProbeReport free_subgroup_probe(BSParams const& p,
                                  std::int64_t    K,
                                  std::uint64_t   trials,
                                  std::uint64_t   seed,
                                  unsigned        max_len = 6);

  nlohmann::json to_json(ChainReport const& r);
  nlohmann::json to_json(ClassReport const& r);
  nlohmann::json to_json(ProbeReport const& r);

  // m,n,canonical_m,canonical_n,ab,rf,rp_primes,rn,rtfn,lcs_length,gamma_omega,prop5_case
  std::string csv_header();
  std::string csv_row(ClassReport const& r);

}  // namespace bs

#endif  // BS_CLASSIFY_HPP_
