#ifndef MOD2HECKE_RATIONAL_HPP
#define MOD2HECKE_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace mod2hecke {

/// Arbitrary-precision integer used for every value that leaves the exact
/// solvers (Hecke matrix entries, fundamental units).
using Integer = mpz_class;
using BigRational = mpq_class;

/// Thrown by CheckedRational when a result does not fit in 64 bits. Callers
/// catch it and redo the computation with BigRational.
class ScalarOverflow : public std::overflow_error {
  public:
    ScalarOverflow() : std::overflow_error("int64 rational overflow") {}
};

/*
 * Exact rational with 64-bit numerator and denominator. Every operation is
 * overflow-checked; nothing ever wraps or rounds. The invariant is
 * den > 0 and gcd(num, den) == 1.
 */
class CheckedRational {
  public:
    constexpr CheckedRational() = default;
    constexpr CheckedRational(std::int64_t n) : num_(n) {}  // NOLINT: implicit by design of scalar
    CheckedRational(std::int64_t n, std::int64_t d) : num_(n), den_(d)
    {
        if (d == 0)
            throw std::domain_error("zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_unit() const { return den_ == 1 && (num_ == 1 || num_ == -1); }

    friend bool operator==(const CheckedRational&, const CheckedRational&) = default;

    CheckedRational operator-() const
    {
        if (num_ == INT64_MIN)
            throw ScalarOverflow();
        CheckedRational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend CheckedRational operator+(const CheckedRational& x, const CheckedRational& y)
    {
        if (x.den_ == 1 && y.den_ == 1)
            return from_raw(add(x.num_, y.num_), 1);
        std::int64_t g = std::gcd(x.den_, y.den_);
        std::int64_t xd = x.den_ / g;
        std::int64_t n = add(mul(x.num_, y.den_ / g), mul(y.num_, xd));
        return make(n, mul(xd, y.den_));
    }
    friend CheckedRational operator-(const CheckedRational& x, const CheckedRational& y)
    {
        return x + (-y);
    }
    friend CheckedRational operator*(const CheckedRational& x, const CheckedRational& y)
    {
        if (x.den_ == 1 && y.den_ == 1)
            return from_raw(mul(x.num_, y.num_), 1);
        std::int64_t g1 = std::gcd(x.num_, y.den_);
        std::int64_t g2 = std::gcd(y.num_, x.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return make(mul(x.num_ / g1, y.num_ / g2), mul(x.den_ / g2, y.den_ / g1));
    }
    friend CheckedRational operator/(const CheckedRational& x, const CheckedRational& y)
    {
        if (y.num_ == 0)
            throw std::domain_error("division by zero");
        CheckedRational inv;
        if (y.num_ < 0) {
            if (y.num_ == INT64_MIN)
                throw ScalarOverflow();
            inv.num_ = -y.den_;
            inv.den_ = -y.num_;
        } else {
            inv.num_ = y.den_;
            inv.den_ = y.num_;
        }
        return x * inv;
    }
    CheckedRational& operator+=(const CheckedRational& y) { return *this = *this + y; }
    CheckedRational& operator-=(const CheckedRational& y) { return *this = *this - y; }
    CheckedRational& operator*=(const CheckedRational& y) { return *this = *this * y; }

    BigRational to_big() const
    {
        return BigRational(Integer(static_cast<long>(num_)), Integer(static_cast<long>(den_)));
    }
    std::string str() const
    {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    static CheckedRational from_raw(std::int64_t n, std::int64_t d)
    {
        CheckedRational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }
    static CheckedRational make(std::int64_t n, std::int64_t d)
    {
        CheckedRational r = from_raw(n, d);
        r.normalize();
        return r;
    }
    static std::int64_t add(std::int64_t a, std::int64_t b)
    {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r))
            throw ScalarOverflow();
        return r;
    }
    static std::int64_t mul(std::int64_t a, std::int64_t b)
    {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r))
            throw ScalarOverflow();
        return r;
    }
    void normalize()
    {
        if (num_ == INT64_MIN || den_ == INT64_MIN)
            throw ScalarOverflow();
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0)
            den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Uniform access used by the templated solvers.
inline bool is_zero(const CheckedRational& x) { return x.is_zero(); }
inline bool is_unit(const CheckedRational& x) { return x.is_unit(); }
inline bool is_integral(const CheckedRational& x) { return x.is_integer(); }
inline BigRational to_big(const CheckedRational& x) { return x.to_big(); }

inline bool is_zero(const BigRational& x) { return sgn(x) == 0; }
inline bool is_unit(const BigRational& x)
{
    return x.get_den() == 1 && abs(x.get_num()) == 1;
}
inline bool is_integral(const BigRational& x) { return x.get_den() == 1; }
inline BigRational to_big(const BigRational& x) { return x; }

}  // namespace mod2hecke

#endif
