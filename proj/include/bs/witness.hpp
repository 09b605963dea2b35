#ifndef BS_WITNESS_HPP_
#define BS_WITNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "bs/britton.hpp"
#include "bs/words.hpp"

// Commutator expressions exhibiting lower central series membership, each
// checked against the normal form engine.

namespace bs {

  struct MembershipWitness {
    CommExpr      expr;
    Word          target;
    std::uint64_t depth;     // expr lies in gamma_depth
    bool          verified;  // eval(expr) == target in BS(m, n)
  };

  // W_1 = [a^m, t], W_{i+1} = [W_i^m, t]; W_i = a^{(n-m)^i} in gamma_{i+1}.
  // Throws Error if the normal form check fails.
  MembershipWitness lemma2_witness(BSParams const& p,
                                   std::uint64_t   i,
                                   Limits const&   lim = {});

  // Same recursion with inner power n instead of m.
  struct PowerVariant {
    std::uint64_t i;
    std::string   normal_form;  // normal form of the level-i expression
    bool          matches;      // equals a^{(n-m)^i}
  };
  std::vector<PowerVariant> lemma2_power_n_variant(BSParams const& p,
                                                   std::uint64_t   max_i,
                                                   Limits const&   lim = {});

  // Depth-(s-1) commutator expression equal to target, for target = a^d in a
  // group with n = m + d (d = 1 gives target a). Uses a^d = [a^m, t] and
  // a^m = (a^d)^{m/d}: V_1 = [a^m, t], V_{j+1} = [V_j^{m/d}, t].
  MembershipWitness gamma_membership_witness(BSParams const& p,
                                             Word const&     target,
                                             std::uint64_t   s,
                                             Limits const&   lim = {});

  // Evidence that a^d lies in [gamma_omega, G] when gamma_omega = <a^d>^G:
  // a^d = [a^m, t] with a^m = (a^d)^{m/d} in gamma_omega. Computed in the
  // canonical parameters.
  struct OmegaStability {
    BSParams    params;  // canonical
    CommExpr    expr;
    Word        target;
    bool        verified;
    std::string statement;
  };
  OmegaStability omega_stability_check(BSParams const& p, Limits const& lim = {});

  nlohmann::json to_json(MembershipWitness const& w);
  nlohmann::json to_json(PowerVariant const& v);
  nlohmann::json to_json(OmegaStability const& r);

}  // namespace bs

#endif  // BS_WITNESS_HPP_
