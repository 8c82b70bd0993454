#include "mod2hecke/gf2.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

namespace mod2hecke::gf2 {

BitMatrix::BitMatrix(std::size_t n)
    : n_(n), stride_((n + word_bits - 1) / word_bits), data_(n * stride_, 0)
{
}

BitMatrix BitMatrix::identity(std::size_t n)
{
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::shifted(bool alpha) const
{
    BitMatrix m = *this;
    if (alpha) {
        for (std::size_t i = 0; i < n_; ++i)
            m.set(i, i, !m.get(i, i));
    }
    return m;
}

BitMatrix BitMatrix::transpose() const
{
    BitMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        auto r = row(i);
        for (std::size_t w = 0; w < stride_; ++w) {
            Word bits = r[w];
            while (bits) {
                std::size_t j = w * word_bits + static_cast<std::size_t>(std::countr_zero(bits));
                t.set(j, i, true);
                bits &= bits - 1;
            }
        }
    }
    return t;
}

std::ostream& operator<<(std::ostream& out, const BitMatrix& m)
{
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j)
            out << (m.get(i, j) ? '1' : '0');
        out << '\n';
    }
    return out;
}

BitMatrix reduce_mod2(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("reduce_mod2: matrix is not square");
    BitMatrix b(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (mpz_odd_p(m(i, j).get_mpz_t()))
                b.set(i, j, true);
        }
    }
    return b;
}

std::size_t russian_table_width(std::size_t n)
{
    std::size_t log2n = n > 1 ? static_cast<std::size_t>(std::bit_width(n) - 1) : 0;
    std::size_t k = log2n > 3 ? log2n - 2 : 1;
    return std::clamp<std::size_t>(k, 1, 8);
}

namespace {

void xor_into(std::span<Word> dst, std::span<const Word> src, std::size_t from_word)
{
    for (std::size_t w = from_word; w < dst.size(); ++w)
        dst[w] ^= src[w];
}

// Gray-code table of all XOR combinations of the given rows.
void build_table(std::vector<Word>& table, std::size_t stride, std::size_t count,
                 const std::vector<std::span<const Word>>& rows, std::size_t from_word)
{
    table.assign((std::size_t{1} << count) * stride, 0);
    for (std::size_t idx = 1; idx < (std::size_t{1} << count); ++idx) {
        std::size_t low = static_cast<std::size_t>(std::countr_zero(idx));
        std::size_t prev = idx & (idx - 1);
        Word* dst = table.data() + idx * stride;
        const Word* base = table.data() + prev * stride;
        const auto& src = rows[low];
        for (std::size_t w = from_word; w < stride; ++w)
            dst[w] = base[w] ^ src[w];
    }
}

}  // namespace

std::size_t rank(BitMatrix m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 0;
    const std::size_t k = russian_table_width(n);
    const std::size_t stride = m.words_per_row();
    std::vector<Word> table;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;

    for (std::size_t c = 0; c < n && r < n; c += k) {
        const std::size_t block_end = std::min(c + k, n);
        const std::size_t from_word = c / word_bits;
        pivot_cols.clear();

        // Find up to k pivots, keeping them reduced against each other.
        for (std::size_t col = c; col < block_end && r + pivot_cols.size() < n; ++col) {
            const std::size_t top = r + pivot_cols.size();
            for (std::size_t i = top; i < n; ++i) {
                bool bit = m.get(i, col);
                for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
                    if (m.get(i, pivot_cols[p]) && m.get(r + p, col))
                        bit = !bit;
                }
                if (!bit)
                    continue;
                for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
                    if (m.get(i, pivot_cols[p]))
                        xor_into(m.row(i), m.row(r + p), from_word);
                }
                if (i != top) {
                    auto a = m.row(i), b = m.row(top);
                    std::swap_ranges(a.begin(), a.end(), b.begin());
                }
                for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
                    if (m.get(r + p, col))
                        xor_into(m.row(r + p), m.row(top), from_word);
                }
                pivot_cols.push_back(col);
                break;
            }
        }
        if (pivot_cols.empty())
            continue;

        std::vector<std::span<const Word>> pivots;
        for (std::size_t p = 0; p < pivot_cols.size(); ++p)
            pivots.push_back(std::as_const(m).row(r + p));
        build_table(table, stride, pivot_cols.size(), pivots, from_word);

        for (std::size_t i = r + pivot_cols.size(); i < n; ++i) {
            std::size_t idx = 0;
            for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
                if (m.get(i, pivot_cols[p]))
                    idx |= std::size_t{1} << p;
            }
            if (idx)
                xor_into(m.row(i), {table.data() + idx * stride, stride}, from_word);
        }
        r += pivot_cols.size();
    }
    return r;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("multiply: dimension mismatch");
    const std::size_t n = a.size();
    BitMatrix c(n);
    if (n == 0)
        return c;
    const std::size_t k = russian_table_width(n);
    const std::size_t stride = b.words_per_row();
    std::vector<Word> table;
    std::vector<std::span<const Word>> rows;

    for (std::size_t j = 0; j < n; j += k) {
        const std::size_t count = std::min(k, n - j);
        rows.clear();
        for (std::size_t t = 0; t < count; ++t)
            rows.push_back(b.row(j + t));
        build_table(table, stride, count, rows, 0);
        const std::size_t word = j / word_bits;
        const std::size_t shift = j % word_bits;
        for (std::size_t i = 0; i < n; ++i) {
            auto ar = a.row(i);
            Word bits = ar[word] >> shift;
            if (shift + count > word_bits && word + 1 < stride)
                bits |= ar[word + 1] << (word_bits - shift);
            std::size_t idx = static_cast<std::size_t>(bits & ((Word{1} << count) - 1));
            if (idx)
                xor_into(c.row(i), {table.data() + idx * stride, stride}, 0);
        }
    }
    return c;
}

std::size_t generalized_multiplicity(const BitMatrix& m, bool alpha)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 0;
    BitMatrix a = m.shifted(alpha);
    std::size_t r = rank(a);
    // Nilpotency index is at most n, so ceil(log2 n) + 1 squarings suffice.
    const std::size_t max_squarings = static_cast<std::size_t>(std::bit_width(n - 1)) + 1;
    for (std::size_t s = 0; s < max_squarings && r != 0 && r != n; ++s) {
        a = multiply(a, a);
        std::size_t next = rank(a);
        if (next == r)
            break;
        r = next;
    }
    return n - r;
}

EigenReport analyze(const BitMatrix& m)
{
    EigenReport rep;
    rep.n = m.size();
    rep.rank0 = rank(m);
    rep.rank1 = rank(m.shifted(true));
    rep.has0 = rep.rank0 < rep.n;
    rep.has1 = rep.rank1 < rep.n;
    rep.mult0 = rep.has0 ? generalized_multiplicity(m, false) : 0;
    rep.mult1 = rep.has1 ? generalized_multiplicity(m, true) : 0;
    return rep;
}

}  // namespace mod2hecke::gf2
