#include "mod2hecke/quad.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mod2hecke/arith.hpp"

namespace mod2hecke::quad {

namespace {

using i128 = __int128;

constexpr std::int64_t max_abs_d = 1'000'000'000'000;
constexpr std::size_t max_cf_steps = 1'000'000;

std::int64_t isqrt(std::int64_t n)
{
    if (n < 0)
        throw std::domain_error("isqrt of negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

std::int64_t narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("quadratic form coefficient exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

// g = u*a + v*b with g >= 0.
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v)
{
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    u = old_s;
    v = old_t;
    return old_r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

bool squarefree(std::int64_t n)
{
    n = n < 0 ? -n : n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0)
            return false;
        if (n % p == 0)
            n /= p;
    }
    return true;
}

}  // namespace

std::string_view to_string(Split s)
{
    switch (s) {
    case Split::splits: return "splits";
    case Split::inert: return "inert";
    case Split::ramifies: return "ramifies";
    }
    return "?";
}

QuadField QuadField::from_d(std::int64_t d)
{
    if (d == 0 || d == 1)
        throw InputError("field parameter must not be 0 or 1");
    if (d > max_abs_d || d < -max_abs_d)
        throw InputError("field parameter " + std::to_string(d) + " is out of range");
    if (!squarefree(d))
        throw InputError(std::to_string(d) + " is not squarefree");
    QuadField f;
    f.d = d;
    f.disc = mod(d, 4) == 1 ? d : 4 * d;
    f.real = d > 0;
    return f;
}

QuadField QuadField::of_prime(std::uint64_t n, int sign)
{
    require_odd_prime(n, "quadratic field");
    if (sign != 1 && sign != -1)
        throw InputError("sign must be +1 or -1");
    return from_d(sign * static_cast<std::int64_t>(n));
}

QForm principal_form(std::int64_t disc)
{
    std::int64_t b = mod(disc, 2);
    return {1, b, (b * b - disc) / 4};
}

bool is_reduced_definite(const QForm& f)
{
    std::int64_t ab = f.b < 0 ? -f.b : f.b;
    if (f.a <= 0 || ab > f.a || f.a > f.c)
        return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0)
        return false;
    return true;
}

bool is_reduced_indefinite(const QForm& f)
{
    i128 D = f.discriminant();
    if (D <= 0 || f.b <= 0 || static_cast<i128>(f.b) * f.b >= D)
        return false;
    i128 a2 = 2 * static_cast<i128>(f.a < 0 ? -f.a : f.a);
    i128 hi = a2 + f.b;
    if (hi * hi <= D)
        return false;
    i128 lo = a2 - f.b;
    return lo < 0 || lo * lo < D;
}

QForm reduce_definite(QForm f)
{
    const i128 D = static_cast<i128>(f.b) * f.b - 4 * static_cast<i128>(f.a) * f.c;
    if (D >= 0 || f.a <= 0)
        throw std::invalid_argument("reduce_definite needs a positive definite form");
    auto normalize = [&](QForm& g) {
        if (g.b > g.a || g.b <= -g.a) {
            std::int64_t t = floor_div(g.a - g.b, 2 * g.a);
            g.b += 2 * g.a * t;
            g.c = narrow((static_cast<i128>(g.b) * g.b - D) / (4 * static_cast<i128>(g.a)));
        }
    };
    normalize(f);
    while (f.a > f.c) {
        f = {f.c, -f.b, f.a};
        normalize(f);
    }
    if (f.a == f.c && f.b < 0)
        f.b = -f.b;
    return f;
}

QForm rho(const QForm& f)
{
    const i128 D = static_cast<i128>(f.b) * f.b - 4 * static_cast<i128>(f.a) * f.c;
    if (D <= 0 || f.c == 0)
        throw std::invalid_argument("rho needs an indefinite form with c != 0");
    const std::int64_t s = isqrt(narrow(D));
    const std::int64_t ac = f.c < 0 ? -f.c : f.c;
    const std::int64_t m = 2 * ac;
    std::int64_t r;
    if (static_cast<i128>(ac) * ac > D) {
        // -|c| < r <= |c|
        r = mod(-f.b, m);
        if (r > ac)
            r -= m;
    } else {
        // largest r < sqrt(D) with r = -b mod 2|c|
        r = s - mod(s + f.b, m);
    }
    QForm g;
    g.a = f.c;
    g.b = r;
    g.c = narrow((static_cast<i128>(r) * r - D) / (4 * static_cast<i128>(f.c)));
    return g;
}

QForm reduce_indefinite(QForm f)
{
    for (std::size_t steps = 0; !is_reduced_indefinite(f); ++steps) {
        if (steps > max_cf_steps)
            throw std::runtime_error("indefinite reduction did not terminate");
        f = rho(f);
    }
    return f;
}

QForm compose(const QForm& f, const QForm& g)
{
    const i128 D = static_cast<i128>(f.b) * f.b - 4 * static_cast<i128>(f.a) * f.c;
    if (D != static_cast<i128>(g.b) * g.b - 4 * static_cast<i128>(g.a) * g.c)
        throw std::invalid_argument("compose: discriminants differ");
    const std::int64_t s = (f.b + g.b) / 2;
    std::int64_t u1, v1, x, w;
    std::int64_t g1 = xgcd(f.a, g.a, u1, v1);
    std::int64_t e = xgcd(g1, s, x, w);
    const i128 u = static_cast<i128>(x) * u1;
    const i128 v = static_cast<i128>(x) * v1;
    const i128 a3 = static_cast<i128>(f.a) * g.a / (static_cast<i128>(e) * e);
    i128 num = u * f.a * g.b + v * g.a * f.b + w * ((static_cast<i128>(f.b) * g.b + D) / 2);
    if (num % e != 0)
        throw std::logic_error("compose: non-integral middle coefficient");
    i128 b3 = num / e;
    const i128 m = 2 * (a3 < 0 ? -a3 : a3);
    b3 %= m;
    if (b3 < 0)
        b3 += m;
    if (b3 > m / 2)
        b3 -= m;
    const i128 cn = b3 * b3 - D;
    if (cn % (4 * a3) != 0)
        throw std::logic_error("compose: non-integral last coefficient");
    return {narrow(a3), narrow(b3), narrow(cn / (4 * a3))};
}

std::vector<QForm> reduced_forms(std::int64_t disc)
{
    std::vector<QForm> out;
    if (disc < 0) {
        const std::int64_t absd = -disc;
        for (std::int64_t a = 1; 3 * a * a <= absd; ++a) {
            for (std::int64_t b = -a + 1; b <= a; ++b) {
                if (mod(b - disc, 2) != 0)
                    continue;
                std::int64_t num = b * b - disc;
                if (num % (4 * a) != 0)
                    continue;
                std::int64_t c = num / (4 * a);
                if (c < a || (c == a && b < 0))
                    continue;
                if (std::gcd(std::gcd(a, b), c) != 1)
                    continue;
                out.push_back({a, b, c});
            }
        }
        return out;
    }
    const std::int64_t s = isqrt(disc);
    if (s * s == disc)
        throw std::invalid_argument("square discriminant");
    for (std::int64_t b = 1; b <= s; ++b) {
        if (mod(b - disc, 2) != 0)
            continue;
        const std::int64_t num = disc - b * b;  // = -4ac > 0
        for (std::int64_t A = std::max<std::int64_t>(1, (s - b + 2) / 2); 2 * A <= s + b; ++A) {
            if (num % (4 * A) != 0)
                continue;
            std::int64_t c = num / (4 * A);
            if (std::gcd(std::gcd(A, b), c) != 1)
                continue;
            QForm pos{A, b, -c}, neg{-A, b, c};
            if (is_reduced_indefinite(pos))
                out.push_back(pos);
            if (is_reduced_indefinite(neg))
                out.push_back(neg);
        }
    }
    return out;
}

ClassGroup::ClassGroup(const QuadField& field) : disc_(field.disc), real_(field.real)
{
    const QForm id = principal_form(disc_);
    if (!real_) {
        elements_ = reduced_forms(disc_);
        if (elements_.empty() || elements_.front() != reduce_definite(id))
            throw std::logic_error("principal form is not the first reduced form");
        for (std::size_t i = 0; i < elements_.size(); ++i)
            index_.emplace(elements_[i], i);
        h_plus_ = elements_.size();
    } else {
        const auto forms = reduced_forms(disc_);
        std::map<QForm, std::size_t> cycle_of;
        std::vector<QForm> cycle_rep;
        auto walk = [&](const QForm& start) {
            std::size_t id = cycle_rep.size();
            cycle_rep.push_back(start);
            QForm f = start;
            do {
                if (!cycle_of.emplace(f, id).second)
                    throw std::logic_error("reduction cycles overlap");
                f = rho(f);
            } while (f != start);
        };
        walk(reduce_indefinite(id));
        for (const QForm& f : forms) {
            if (!cycle_of.count(f))
                walk(f);
        }
        if (cycle_of.size() != forms.size())
            throw std::logic_error("reduction cycle left the set of reduced forms");
        h_plus_ = cycle_rep.size();

        // Wide classes: merge each narrow class C with C*J, J the class of
        // the negated principal form (trivial iff the unit has norm -1).
        const QForm minus_one{-1, id.b, -id.c};
        std::vector<std::size_t> wide(cycle_rep.size(), SIZE_MAX);
        for (std::size_t i = 0; i < cycle_rep.size(); ++i) {
            if (wide[i] != SIZE_MAX)
                continue;
            std::size_t partner = cycle_of.at(reduce_indefinite(::mod2hecke::quad::compose(cycle_rep[i], minus_one)));
            wide[i] = elements_.size();
            wide[partner] = elements_.size();
            elements_.push_back(cycle_rep[i]);
        }
        for (const auto& [f, cyc] : cycle_of)
            index_.emplace(f, wide[cyc]);
    }

    // Invariant factors from the counts #{x : x^(p^k) = 1}.
    const std::uint64_t h = elements_.size();
    std::vector<std::uint64_t> orders(h);
    for (std::size_t i = 0; i < h; ++i)
        orders[i] = order(i);
    std::vector<std::vector<std::uint64_t>> exps_by_prime;  // descending exponents per prime
    std::vector<std::uint64_t> primes;
    std::uint64_t rest = h;
    for (std::uint64_t p = 2; p <= rest; ++p) {
        if (rest % p != 0)
            continue;
        while (rest % p == 0)
            rest /= p;
        primes.push_back(p);
        std::vector<std::uint64_t> ranks;  // ranks[k-1] = #{i : e_i >= k}
        std::uint64_t prev = 1, pk = 1;
        while (true) {
            pk *= p;
            std::uint64_t count = 0;
            for (std::uint64_t o : orders) {
                if (pk % o == 0)
                    ++count;
            }
            if (count == prev)
                break;
            std::uint64_t ratio = count / prev, r = 0;
            while (ratio > 1) {
                ratio /= p;
                ++r;
            }
            ranks.push_back(r);
            prev = count;
        }
        std::vector<std::uint64_t> exps(ranks.empty() ? 0 : ranks.front(), 0);
        for (std::uint64_t k = 0; k < ranks.size(); ++k)
            for (std::uint64_t i = 0; i < ranks[k]; ++i)
                ++exps[i];
        exps_by_prime.push_back(exps);
    }
    std::size_t t = 0;
    for (const auto& e : exps_by_prime)
        t = std::max(t, e.size());
    structure_.assign(t, 1);
    for (std::size_t q = 0; q < primes.size(); ++q) {
        const auto& e = exps_by_prime[q];
        for (std::size_t i = 0; i < e.size(); ++i) {
            // Largest exponent goes into the last (largest) invariant factor.
            for (std::uint64_t k = 0; k < e[i]; ++k)
                structure_[t - 1 - i] *= primes[q];
        }
    }
}

std::uint64_t ClassGroup::h_odd() const { return odd_part(h()); }
std::uint64_t ClassGroup::h_even() const { return two_part(h()); }

std::size_t ClassGroup::class_of(const QForm& f) const
{
    if (f.discriminant() != disc_)
        throw std::invalid_argument("form has the wrong discriminant");
    QForm r = real_ ? reduce_indefinite(f) : reduce_definite(f);
    auto it = index_.find(r);
    if (it == index_.end())
        throw std::logic_error("reduced form missing from class group");
    return it->second;
}

std::size_t ClassGroup::compose(std::size_t i, std::size_t j) const
{
    return class_of(::mod2hecke::quad::compose(elements_.at(i), elements_.at(j)));
}

std::uint64_t ClassGroup::order(std::size_t i) const
{
    std::uint64_t k = 1;
    std::size_t x = i;
    while (x != 0) {
        x = compose(x, i);
        if (++k > elements_.size())
            throw std::logic_error("element order exceeds class number");
    }
    return k;
}

Split splitting_of_2(const QuadField& field)
{
    if (mod(field.d, 2) == 0)
        throw InputError("splitting_of_2 needs an odd field parameter");
    switch (kronecker(field.disc, 2)) {
    case 1: return Split::splits;
    case -1: return Split::inert;
    default: return Split::ramifies;
    }
}

ClassGroup class_group(const QuadField& field) { return ClassGroup(field); }

Integer unit_norm(const QuadField& field, const Integer& x, const Integer& y)
{
    if (mod(field.d, 4) == 1)
        return x * x + x * y - Integer(static_cast<long>((field.d - 1) / 4)) * y * y;
    return x * x - Integer(static_cast<long>(field.d)) * y * y;
}

Unit fundamental_unit(const QuadField& field)
{
    if (!field.real)
        throw InputError("fundamental_unit needs a real quadratic field");
    const std::int64_t d = field.d;
    const bool half = mod(d, 4) == 1;
    const std::int64_t s = isqrt(d);
    // Continued fraction of theta = (P + sqrt d)/Q with Q | d - P^2.
    std::int64_t P = half ? 1 : 0, Q = half ? 2 : 1;
    Integer p = 1, p_prev = 0, q = 0, q_prev = 1;  // convergents k-1 and k-2
    for (std::size_t k = 0; k < max_cf_steps; ++k) {
        if (Q <= 0)
            throw std::logic_error("continued fraction left the reduced range");
        const std::int64_t a = floor_div(P + s, Q);
        Integer pk = a * p + p_prev;
        Integer qk = a * q + q_prev;
        p_prev = p;
        p = pk;
        q_prev = q;
        q = qk;
        Integer x = half ? Integer(p - q) : p;
        const Integer& y = q;
        Integer nrm = unit_norm(field, x, y);
        if (nrm == 1 || nrm == -1)
            return {x, y, nrm == 1 ? 1 : -1};
        const std::int64_t nextP = a * Q - P;
        const std::int64_t nextQ = (d - nextP * nextP) / Q;
        P = nextP;
        Q = nextQ;
    }
    throw std::runtime_error("continued fraction period exceeds the step cap");
}

bool unit_residue_mod2(const QuadField& field)
{
    if (!field.real || mod(field.disc, 8) != 5)
        throw InputError("unit_residue_mod2 needs a real field in which 2 is inert");
    Unit u = fundamental_unit(field);
    return mpz_odd_p(u.x.get_mpz_t()) && mpz_even_p(u.y.get_mpz_t());
}

std::uint64_t ray_class_number_2(const QuadField& field, const ClassGroup& cg)
{
    if (mod(field.disc, 8) != 5)
        throw InputError("ray_class_number_2 needs 2 inert");
    const std::uint64_t h = cg.h();
    if (!field.real)
        return field.d == -3 ? h : 3 * h;
    return unit_residue_mod2(field) ? 3 * h : h;
}

std::uint64_t ray_class_number_2(const QuadField& field)
{
    if (mod(field.disc, 8) != 5)
        throw InputError("ray_class_number_2 needs 2 inert");
    return ray_class_number_2(field, ClassGroup(field));
}

QForm prime_form_2(std::int64_t disc)
{
    for (std::int64_t b = 0; b < 4; ++b) {
        if (mod(b - disc, 2) == 0 && mod(b * b - disc, 8) == 0)
            return {2, b, (b * b - disc) / 8};
    }
    throw std::invalid_argument("2 is inert for discriminant " + std::to_string(disc));
}

std::uint64_t p2_order(const QuadField& field, const ClassGroup& cg)
{
    if (mod(field.disc, 8) == 5)
        return 1;
    return cg.order(cg.class_of(prime_form_2(field.disc)));
}

std::uint64_t p2_order(const QuadField& field) { return p2_order(field, ClassGroup(field)); }

QuadInvariants invariants_of(const QuadField& field)
{
    ClassGroup cg(field);
    QuadInvariants inv;
    inv.field = field;
    inv.h = cg.h();
    inv.h_odd = cg.h_odd();
    inv.h_even = cg.h_even();
    inv.structure = cg.structure();
    inv.split2 = mod(field.disc, 2) == 0 ? Split::ramifies
               : mod(field.disc, 8) == 1 ? Split::splits
                                         : Split::inert;
    inv.ord_p2 = p2_order(field, cg);
    inv.h_odd_2split = inv.h_odd / odd_part(inv.ord_p2);
    if (field.real)
        inv.unit = fundamental_unit(field);
    if (inv.split2 == Split::inert) {
        if (field.real)
            inv.unit_is_1_mod2 = mpz_odd_p(inv.unit->x.get_mpz_t()) && mpz_even_p(inv.unit->y.get_mpz_t());
        inv.h_ray2 = !field.real ? (field.d == -3 ? inv.h : 3 * inv.h)
                                 : (*inv.unit_is_1_mod2 ? 3 * inv.h : inv.h);
    }
    return inv;
}

QuadInvariants invariants(std::uint64_t n, int sign)
{
    return invariants_of(QuadField::of_prime(n, sign));
}

}  // namespace mod2hecke::quad
