// Independent reference implementations used only by the tests.
#ifndef MOD2HECKE_TEST_ORACLES_HPP
#define MOD2HECKE_TEST_ORACLES_HPP

#include <cstdint>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline std::int64_t floor_sqrt(std::int64_t n)
{
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

// Number of primitive reduced forms of negative discriminant D, weighted 1/2
// for D = -4 and 1/3 for D = -3.
inline mpq_class weighted_class_number(std::int64_t D)
{
    std::int64_t count = 0;
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if ((b * b - D) % (4 * a) != 0)
                continue;
            std::int64_t c = (b * b - D) / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) == 1)
                ++count;
        }
    }
    mpq_class h = count;
    if (D == -3)
        h /= 3;
    if (D == -4)
        h /= 2;
    return h;
}

inline std::int64_t posmod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Trace of T_n on S_2(Gamma_0(N)), N prime, gcd(n, N) = 1 (Eichler-Selberg).
inline mpq_class eichler_selberg_trace(std::int64_t N, std::int64_t n)
{
    const std::int64_t psiN = N + 1;
    mpq_class a1 = 0;
    const std::int64_t r = floor_sqrt(n);
    if (r * r == n) {
        a1 = mpq_class(psiN, 12);
        a1.canonicalize();
    }

    mpq_class a2 = 0;
    for (std::int64_t t = -2 * r - 2; t <= 2 * r + 2; ++t) {
        const std::int64_t D = t * t - 4 * n;
        if (D >= 0)
            continue;
        for (std::int64_t f = 1; f * f <= -D; ++f) {
            if (D % (f * f) != 0)
                continue;
            const std::int64_t Df = D / (f * f);
            if (posmod(Df, 4) != 0 && posmod(Df, 4) != 1)
                continue;
            const std::int64_t Nf = f % N == 0 ? N : 1;
            const std::int64_t modulus = N * Nf;
            std::set<std::int64_t> roots;
            for (std::int64_t x = 0; x < modulus; ++x) {
                if (posmod(x * x - t * x + n, modulus) == 0)
                    roots.insert(x % N);
            }
            const std::int64_t psi_ratio = Nf == 1 ? 1 : psiN;  // psi(N)/psi(N/N_f)
            a2 += weighted_class_number(Df) * psi_ratio * static_cast<long>(roots.size());
        }
    }
    a2 /= -2;

    mpq_class a3 = 0, a4 = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d != 0)
            continue;
        a3 -= std::min(d, n / d);
        a4 += d;
    }
    mpq_class total = a1 + a2 + a3 + a4;
    total.canonicalize();
    return total;
}

// Power sums Tr(T_2^k), k = 1..K, from the traces of T_{2^j} and
// T_2 T_{2^j} = T_{2^{j+1}} + 2 T_{2^{j-1}}.
inline std::vector<mpz_class> t2_power_sums(std::int64_t N, int K)
{
    std::vector<mpq_class> tr(K + 1);
    for (int j = 0; j <= K; ++j)
        tr[j] = eichler_selberg_trace(N, std::int64_t{1} << j);
    std::vector<mpz_class> coeff{1};  // T_2^0 = T_1
    std::vector<mpz_class> sums;
    for (int k = 1; k <= K; ++k) {
        std::vector<mpz_class> next(coeff.size() + 1, 0);
        for (std::size_t j = 0; j < coeff.size(); ++j) {
            next[j + 1] += coeff[j];
            if (j >= 1)
                next[j - 1] += 2 * coeff[j];
        }
        coeff = next;
        mpq_class s = 0;
        for (std::size_t j = 0; j < coeff.size(); ++j)
            s += coeff[j] * tr[j];
        if (s.get_den() != 1)
            std::abort();
        sums.push_back(s.get_num());
    }
    return sums;
}

inline int kronecker(std::int64_t D, std::int64_t a)
{
    int result = 1;
    while (a % 2 == 0) {
        a /= 2;
        const std::int64_t r = posmod(D, 8);
        if (r % 2 == 0)
            return 0;
        if (r == 3 || r == 5)
            result = -result;
    }
    // Jacobi symbol (D / a), a odd.
    std::int64_t x = posmod(D, a), m = a;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            if (m % 8 == 3 || m % 8 == 5)
                result = -result;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3)
            result = -result;
        x %= m;
    }
    return m == 1 ? result : 0;
}

// Class number of a fundamental discriminant from the finite Dirichlet sums.
inline long analytic_class_number(std::int64_t D, double log_unit = 0)
{
    const double pi = 3.14159265358979323846;
    if (D < 0) {
        const std::int64_t w = D == -3 ? 6 : D == -4 ? 4 : 2;
        std::int64_t s = 0;
        for (std::int64_t a = 1; a < -D; ++a)
            s += kronecker(D, a) * a;
        return static_cast<long>(-w * s / (2 * -D));
    }
    double s = 0;
    for (std::int64_t a = 1; a < D; ++a)
        s += kronecker(D, a) * std::log(std::sin(pi * static_cast<double>(a) / static_cast<double>(D)));
    return std::lround(-s / (2 * log_unit));
}

using Dense = std::vector<std::vector<std::uint8_t>>;

inline Dense random_dense(std::size_t n, std::mt19937_64& rng, double density = 0.5)
{
    std::bernoulli_distribution bit(density);
    Dense m(n, std::vector<std::uint8_t>(n));
    for (auto& row : m)
        for (auto& x : row)
            x = bit(rng);
    return m;
}

inline std::size_t naive_rank(Dense m)
{
    const std::size_t n = m.size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t p = r;
        while (p < n && !m[p][c])
            ++p;
        if (p == n)
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != r && m[i][c]) {
                for (std::size_t j = 0; j < n; ++j)
                    m[i][j] ^= m[r][j];
            }
        }
        ++r;
    }
    return r;
}

inline Dense naive_multiply(const Dense& a, const Dense& b)
{
    const std::size_t n = a.size();
    Dense c(n, std::vector<std::uint8_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    c[i][j] ^= b[k][j];
    return c;
}

// Characteristic polynomial over GF(2), coefficient of x^i at index i, via
// reduction to upper Hessenberg form by similarity.
inline std::vector<std::uint8_t> charpoly_gf2(Dense h)
{
    const std::size_t n = h.size();
    for (std::size_t k = 0; k + 2 <= n; ++k) {
        std::size_t p = k + 1;
        while (p < n && !h[p][k])
            ++p;
        if (p == n)
            continue;
        if (p != k + 1) {
            std::swap(h[p], h[k + 1]);
            for (auto& row : h)
                std::swap(row[p], row[k + 1]);
        }
        for (std::size_t i = k + 2; i < n; ++i) {
            if (!h[i][k])
                continue;
            for (std::size_t j = 0; j < n; ++j)
                h[i][j] ^= h[k + 1][j];
            for (std::size_t j = 0; j < n; ++j)
                h[j][k + 1] ^= h[j][i];
        }
    }
    // p_m = (x + h_mm) p_{m-1} + sum_i h_{m-i,m} prod(subdiagonal) p_{m-i-1}
    std::vector<std::vector<std::uint8_t>> p(n + 1);
    p[0] = {1};
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<std::uint8_t> cur(m + 1, 0);
        const auto& prev = p[m - 1];
        for (std::size_t i = 0; i < prev.size(); ++i) {
            cur[i + 1] ^= prev[i];
            cur[i] ^= prev[i] & h[m - 1][m - 1];
        }
        std::uint8_t prod = 1;
        for (std::size_t i = 1; i < m; ++i) {
            prod &= h[m - i][m - i - 1];
            if (!prod)
                break;
            if (h[m - i - 1][m - 1]) {
                const auto& q = p[m - i - 1];
                for (std::size_t j = 0; j < q.size(); ++j)
                    cur[j] ^= q[j];
            }
        }
        p[m] = cur;
    }
    return p[n];
}

// Multiplicity of alpha in {0, 1} as a root of a GF(2) polynomial.
inline std::size_t root_multiplicity(std::vector<std::uint8_t> f, int alpha)
{
    std::size_t mult = 0;
    while (f.size() > 1) {
        // Synthetic division by (x + alpha).
        std::vector<std::uint8_t> q(f.size() - 1);
        std::uint8_t carry = 0;
        for (std::size_t i = f.size(); i-- > 1;) {
            carry = static_cast<std::uint8_t>(f[i] ^ (alpha ? carry : 0));
            q[i - 1] = carry;
        }
        std::uint8_t rem = static_cast<std::uint8_t>(f[0] ^ (alpha ? carry : 0));
        if (rem)
            break;
        f = q;
        ++mult;
    }
    return mult;
}

// #E(F_2) for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, plus the point at infinity.
inline int points_over_f2(int a1, int a2, int a3, int a4, int a6)
{
    int count = 1;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            int lhs = y * y + a1 * x * y + a3 * y;
            int rhs = x * x * x + a2 * x * x + a4 * x + a6;
            if (((lhs - rhs) % 2 + 2) % 2 == 0)
                ++count;
        }
    return count;
}

}  // namespace oracle

#endif
