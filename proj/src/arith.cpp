#include "mod2hecke/arith.hpp"

#include <cmath>

namespace mod2hecke {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses are sufficient below 2^64.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    if (hi < 2 || lo > hi)
        return out;
    if (hi <= 100'000'000) {
        std::vector<bool> composite(hi + 1, false);
        for (std::uint64_t p = 2; p * p <= hi; ++p) {
            if (composite[p])
                continue;
            for (std::uint64_t q = p * p; q <= hi; q += p)
                composite[q] = true;
        }
        for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n) {
            if (!composite[n])
                out.push_back(n);
        }
        return out;
    }
    for (std::uint64_t n = lo; n <= hi && n >= lo; ++n) {
        if (is_prime(n))
            out.push_back(n);
    }
    return out;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t old_r = mod(a, m), r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        throw std::domain_error("not invertible modulo " + std::to_string(m));
    return mod(old_s, m);
}

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n <= 0)
        throw std::domain_error("kronecker: n must be positive");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        std::int64_t r = mod(a, 8);
        if (r == 0 || r == 2 || r == 4 || r == 6)
            return 0;
        if (r == 3 || r == 5)
            result = -result;
    }
    // Jacobi symbol for odd n.
    a = mod(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

void require_odd_prime(std::uint64_t n, const std::string& what)
{
    if (n < 3 || !is_prime(n))
        throw InputError(what + ": " + std::to_string(n) + " is not an odd prime");
}

}  // namespace mod2hecke
