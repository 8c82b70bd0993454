#ifndef MOD2HECKE_PREDICT_HPP
#define MOD2HECKE_PREDICT_HPP

#include <cstdint>
#include <string>

#include "mod2hecke/quad.hpp"

namespace mod2hecke::predict {

enum class SsField { none, plus, minus };
std::string to_string(SsField f);

struct Prediction {
    std::uint64_t N = 0;
    std::uint64_t ord_dih_plus = 0;
    std::uint64_t ord_dih_minus = 0;
    std::uint64_t ord_dih_plus_a2_1 = 0;
    std::uint64_t ord_dih_minus_a2_1 = 0;
    std::uint64_t ss_count = 0;
    SsField ss_field = SsField::none;
    std::uint64_t reducible = 0;
    bool implies_has0 = false;
    bool implies_has1 = false;
    // Conjectural lower bounds, and the weaker bounds that follow from proven results.
    std::uint64_t mult0_lb = 0;
    std::uint64_t mult1_lb = 0;
    std::uint64_t mult0_thm = 0;
    std::uint64_t mult1_thm = 0;
    bool kida_reducible_only = false;
    bool setzer_reducible_only = false;
    std::string hadano_2N_verdict;
};

struct Bounds {
    std::uint64_t mult0 = 0;
    std::uint64_t mult1 = 0;
};

/// Counts of maximal ideals and presence implications; bounds and criteria are filled too.
Prediction predict(std::uint64_t N, const quad::QuadInvariants& inv_plus,
                   const quad::QuadInvariants& inv_minus);
/// Convenience overload computing the invariants of Q(sqrt(+-N)) (and of Q(sqrt(+-2N))).
Prediction predict(std::uint64_t N);

/// Lower bounds on the generalized multiplicities of 0 and 1 under the multiplicity conjecture.
Bounds multiplicity_bounds(const Prediction& pred, const quad::QuadInvariants& inv_minus);
/// Lower bounds implied by proven results only (existence of each ideal, and the
/// doubling for ordinary Q(sqrt(-N))-dihedral ideals when N = 3 mod 4).
Bounds theorem_bounds(const Prediction& pred);

/// True iff 3 divides none of h(Q(sqrt N)), h(Q(sqrt -N)), h(K,(2)) with K = Q(sqrt(+-N)), N = +-1 mod 4.
bool kida_criterion(std::uint64_t N, const quad::QuadInvariants& inv_plus,
                    const quad::QuadInvariants& inv_minus);
/// N = 1,7 mod 8 and 3 divides neither h(Q(sqrt(+-N))).
bool setzer_criterion(std::uint64_t N, const quad::QuadInvariants& inv_plus,
                      const quad::QuadInvariants& inv_minus);

inline constexpr const char* hadano_reducible = "conductor-2N curves all reducible";
inline constexpr const char* hadano_none = "no conductor-2N curves";
inline constexpr const char* hadano_no_conclusion = "no conclusion";

std::string hadano_criterion(std::uint64_t N, std::uint64_t h_plus_N, std::uint64_t h_minus_N,
                             std::uint64_t h_plus_2N, std::uint64_t h_minus_2N);
std::string hadano_criterion(std::uint64_t N);

struct HeuristicModel {
    double cl_constant = 0;
    double p_ss_5mod8 = 0;
    double p_either_dih_7mod8 = 0;
};

HeuristicModel heuristic_model();

}  // namespace mod2hecke::predict

#endif
