#include "mod2hecke/predict.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mod2hecke/arith.hpp"

namespace mod2hecke::predict {

std::string to_string(SsField f)
{
    switch (f) {
    case SsField::plus: return "plus";
    case SsField::minus: return "minus";
    case SsField::none: return "none";
    }
    return "none";
}

namespace {

std::uint64_t ideal_count(std::uint64_t odd)
{
    return (odd - 1) / 2;
}

}  // namespace

Prediction predict(std::uint64_t N, const quad::QuadInvariants& inv_plus,
                   const quad::QuadInvariants& inv_minus)
{
    require_odd_prime(N, "predict");
    if (inv_plus.field.d != static_cast<std::int64_t>(N) || inv_minus.field.d != -static_cast<std::int64_t>(N))
        throw InputError("invariants do not belong to Q(sqrt(+-N))");
    const unsigned r8 = N % 8;
    Prediction p;
    p.N = N;
    p.ord_dih_plus = ideal_count(inv_plus.h_odd);
    p.ord_dih_minus = ideal_count(inv_minus.h_odd);
    p.ord_dih_plus_a2_1 = ideal_count(inv_plus.h_odd_2split);
    p.ord_dih_minus_a2_1 = ideal_count(inv_minus.h_odd_2split);
    if (r8 == 3 && N > 3) {
        p.ss_count = inv_minus.h;
        p.ss_field = SsField::minus;
    } else if (r8 == 5 && inv_plus.unit_is_1_mod2.value_or(false)) {
        p.ss_count = inv_plus.h;
        p.ss_field = SsField::plus;
    }
    p.reducible = r8 == 1 ? 1 : 0;
    p.implies_has0 = p.ss_count > 0;
    p.implies_has1 = p.reducible == 1 || p.ord_dih_plus_a2_1 > 0 || p.ord_dih_minus_a2_1 > 0;

    Bounds conj = multiplicity_bounds(p, inv_minus);
    p.mult0_lb = conj.mult0;
    p.mult1_lb = conj.mult1;
    Bounds thm = theorem_bounds(p);
    p.mult0_thm = thm.mult0;
    p.mult1_thm = thm.mult1;
    p.kida_reducible_only = kida_criterion(N, inv_plus, inv_minus);
    p.setzer_reducible_only = setzer_criterion(N, inv_plus, inv_minus);
    return p;
}

Prediction predict(std::uint64_t N)
{
    require_odd_prime(N, "predict");
    Prediction p = predict(N, quad::invariants(N, 1), quad::invariants(N, -1));
    p.hadano_2N_verdict = hadano_criterion(N);
    return p;
}

Bounds multiplicity_bounds(const Prediction& pred, const quad::QuadInvariants& inv_minus)
{
    const unsigned r8 = pred.N % 8;
    const std::uint64_t h_even = inv_minus.h_even;
    Bounds b;
    // Supersingular ideals have a2 = 0; no conjectural weight beyond existence.
    b.mult0 = pred.ss_count;

    const std::uint64_t w_plus = (r8 == 1 || r8 == 5) ? 4 : 2;
    std::uint64_t w_minus = 1;
    if (r8 == 1)
        w_minus = h_even;
    else if (r8 == 5 || r8 % 4 == 3)
        w_minus = 2;
    b.mult1 = w_plus * pred.ord_dih_plus_a2_1 + w_minus * pred.ord_dih_minus_a2_1;
    if (pred.reducible) {
        std::uint64_t w = h_even >= 2 ? (h_even - 2) / 2 : 0;
        b.mult1 += std::max<std::uint64_t>(1, w);
    }
    return b;
}

Bounds theorem_bounds(const Prediction& pred)
{
    Bounds b;
    b.mult0 = pred.ss_count;
    const std::uint64_t w_minus = pred.N % 4 == 3 ? 2 : 1;
    b.mult1 = pred.ord_dih_plus_a2_1 + w_minus * pred.ord_dih_minus_a2_1 + pred.reducible;
    return b;
}

bool kida_criterion(std::uint64_t N, const quad::QuadInvariants& inv_plus,
                    const quad::QuadInvariants& inv_minus)
{
    const quad::QuadInvariants& k = N % 4 == 1 ? inv_plus : inv_minus;
    std::uint64_t ray;
    if (k.split2 == quad::Split::splits) {
        // (O/2)^x is trivial when 2 splits, so the ray class group mod (2) is cl(K).
        ray = k.h;
    } else if (k.h_ray2) {
        ray = *k.h_ray2;
    } else {
        ray = quad::ray_class_number_2(k.field);
    }
    return inv_plus.h % 3 != 0 && inv_minus.h % 3 != 0 && ray % 3 != 0;
}

bool setzer_criterion(std::uint64_t N, const quad::QuadInvariants& inv_plus,
                      const quad::QuadInvariants& inv_minus)
{
    const unsigned r8 = N % 8;
    return (r8 == 1 || r8 == 7) && inv_plus.h % 3 != 0 && inv_minus.h % 3 != 0;
}

std::string hadano_criterion(std::uint64_t N, std::uint64_t h_plus_N, std::uint64_t h_minus_N,
                             std::uint64_t h_plus_2N, std::uint64_t h_minus_2N)
{
    require_odd_prime(N, "hadano_criterion");
    for (std::uint64_t h : {h_plus_N, h_minus_N, h_plus_2N, h_minus_2N}) {
        if (h % 3 == 0)
            return hadano_no_conclusion;
    }
    const unsigned r8 = N % 8;
    return (r8 == 1 || r8 == 7) ? hadano_reducible : hadano_none;
}

std::string hadano_criterion(std::uint64_t N)
{
    require_odd_prime(N, "hadano_criterion");
    const auto n = static_cast<std::int64_t>(N);
    auto h = [](std::int64_t d) { return quad::ClassGroup(quad::QuadField::from_d(d)).h(); };
    return hadano_criterion(N, h(n), h(-n), h(2 * n), h(-2 * n));
}

HeuristicModel heuristic_model()
{
    constexpr std::uint64_t prime_cap = 100'000;
    constexpr int j_cap = 40;
    long double log_prod = 0;
    for (std::uint64_t p : primes_between(3, prime_cap)) {
        const long double inv = 1.0L / static_cast<long double>(p);
        long double pw = inv;
        for (int j = 1; j <= j_cap; ++j) {
            pw *= inv;
            if (pw == 0)
                break;
            log_prod += std::log1p(-pw);
        }
    }
    HeuristicModel m;
    m.cl_constant = static_cast<double>(1 - std::exp(log_prod));
    m.p_ss_5mod8 = 1.0 / 3.0;
    m.p_either_dih_7mod8 = 1 - (1 - m.cl_constant) * (1 - m.cl_constant);
    return m;
}

}  // namespace mod2hecke::predict
