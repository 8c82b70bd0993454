#ifndef MOD2HECKE_ARITH_HPP
#define MOD2HECKE_ARITH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mod2hecke {

/// Bad user input: non-prime level, unsupported field, malformed arguments.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Primes p with lo <= p <= hi, ascending.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);

/// Inverse of a modulo m; a must be a unit.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// Non-negative residue.
inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Kronecker symbol (a/n) for n > 0.
int kronecker(std::int64_t a, std::int64_t n);

/// Largest power of two dividing n (n != 0), and the complementary odd part.
inline std::uint64_t two_part(std::uint64_t n) { return n & (~n + 1); }
inline std::uint64_t odd_part(std::uint64_t n) { return n / two_part(n); }

/// Throws InputError unless n is an odd prime.
void require_odd_prime(std::uint64_t n, const std::string& what);

}  // namespace mod2hecke

#endif
