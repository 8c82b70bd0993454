#ifndef MOD2HECKE_GF2_HPP
#define MOD2HECKE_GF2_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mod2hecke/modsym.hpp"

namespace mod2hecke::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

/*
 * Dense square matrix over GF(2), one bit-packed row per matrix row. Bits past
 * column n in the last word of every row are always zero.
 */
class BitMatrix {
  public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n);

    static BitMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    std::size_t words_per_row() const { return stride_; }

    bool get(std::size_t i, std::size_t j) const
    {
        return (data_[i * stride_ + j / word_bits] >> (j % word_bits)) & 1U;
    }
    void set(std::size_t i, std::size_t j, bool v)
    {
        Word& w = data_[i * stride_ + j / word_bits];
        Word mask = Word{1} << (j % word_bits);
        w = v ? (w | mask) : (w & ~mask);
    }

    std::span<Word> row(std::size_t i) { return {data_.data() + i * stride_, stride_}; }
    std::span<const Word> row(std::size_t i) const { return {data_.data() + i * stride_, stride_}; }

    /// M + alpha*I.
    BitMatrix shifted(bool alpha) const;
    BitMatrix transpose() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  private:
    std::size_t n_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> data_;
};

std::ostream& operator<<(std::ostream& out, const BitMatrix& m);

struct EigenReport {
    std::size_t n = 0;
    std::size_t rank0 = 0;  // rank of M
    std::size_t rank1 = 0;  // rank of M + I
    std::size_t mult0 = 0;
    std::size_t mult1 = 0;
    bool has0 = false;
    bool has1 = false;
};

BitMatrix reduce_mod2(const IntMatrix& m);

/// Table width used by the four-Russians kernels for dimension n.
std::size_t russian_table_width(std::size_t n);

/// Rank over GF(2) by four-Russians elimination.
std::size_t rank(BitMatrix m);

/// Product over GF(2) by the four-Russians multiplication table method.
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

/// Dimension of the generalized eigenspace of alpha: n - rank((M - alpha I)^k)
/// for k large enough that the rank has stabilized.
std::size_t generalized_multiplicity(const BitMatrix& m, bool alpha);

EigenReport analyze(const BitMatrix& m);

}  // namespace mod2hecke::gf2

#endif
