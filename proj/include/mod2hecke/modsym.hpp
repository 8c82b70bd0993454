#ifndef MOD2HECKE_MODSYM_HPP
#define MOD2HECKE_MODSYM_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mod2hecke/rational.hpp"

namespace mod2hecke {

/// A Hecke matrix entry failed to be an integer after exact computation.
class IntegralityViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

    Integer trace() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> data_;
};

namespace modsym {

/// Projective point (c:d) of P^1(Z/N).
struct P1Point {
    std::int64_t c = 0;
    std::int64_t d = 1;
    friend bool operator==(const P1Point&, const P1Point&) = default;
};

/*
 * P^1(Z/N) for N an odd prime. Representatives are (1:d), d = 0..N-1, stored
 * at index d, followed by (0:1) at index N.
 */
class P1List {
  public:
    explicit P1List(std::int64_t level);

    std::int64_t level() const { return level_; }
    std::size_t size() const { return static_cast<std::size_t>(level_) + 1; }
    std::size_t index(std::int64_t c, std::int64_t d) const;
    P1Point point(std::size_t i) const;

  private:
    std::int64_t level_;
    std::vector<std::int64_t> inverse_;
};

std::vector<P1Point> build_p1(std::uint64_t level);

struct Mat2 {
    std::int64_t a, b, c, d;
};

/// Merel's set for T_n: ad - bc = n, a > b >= 0, d > c >= 0.
std::vector<Mat2> heilbronn_merel(std::int64_t n);

struct HeckeMatrix {
    std::uint64_t p = 0;
    IntMatrix entries;  // column j holds T_p applied to cuspidal basis vector j
};

/// Integer combination of free generators: (basis index, coefficient).
using Combination = std::vector<std::pair<std::int32_t, BigRational>>;

/*
 * Plus-quotient of weight-2 modular symbols for Gamma_0(N), N an odd prime,
 * presented by Manin symbols modulo the two- and three-term relations and
 * the star involution. Immutable after construction.
 */
class ModularSymbolSpace {
  public:
    explicit ModularSymbolSpace(std::uint64_t level);

    std::uint64_t level() const { return level_; }
    std::size_t genus() const { return genus_; }
    std::size_t dim_full() const { return basis_.size(); }
    const P1List& p1() const { return p1_; }

    /// Manin-symbol indices of the free generators.
    const std::vector<std::int32_t>& basis() const { return basis_; }

    /// Expression of a Manin symbol in terms of the free generators.
    Combination rewrite(std::size_t symbol) const;

    /// Cuspidal basis vectors, in coordinates of the free generators.
    const std::vector<std::vector<Integer>>& cuspidal_basis() const { return cuspidal_; }

    /// Boundary map to the cusps: coefficient of [infinity] per free generator
    /// (the coefficient of [0] is its negative).
    const std::vector<std::int64_t>& boundary() const { return boundary_; }

    /// True when every rewrite coefficient is an integer.
    bool integral_rewrite() const { return integral_rewrite_; }

    HeckeMatrix hecke_matrix(std::uint64_t p) const;

  private:
    template <class Scalar>
    void solve_relations();
    template <class Scalar>
    std::vector<Scalar> hecke_image(const std::vector<Mat2>& family, std::size_t symbol) const;
    template <class Scalar>
    HeckeMatrix hecke_matrix_with(std::uint64_t p) const;

    std::uint64_t level_;
    std::size_t genus_ = 0;
    P1List p1_;

    // Two-term reduction: symbol -> (generator, sign); generator -1 means zero.
    std::vector<std::int32_t> symbol_gen_;
    std::vector<std::int8_t> symbol_sign_;
    std::vector<std::int32_t> gen_symbol_;

    std::vector<std::int32_t> basis_;
    std::vector<std::int32_t> gen_free_;  // generator -> free index or -1
    // Dense expressions of the non-free generators; stored as int64 when the
    // solve stayed within CheckedRational, otherwise as BigRational.
    std::vector<std::vector<CheckedRational>> expr_small_;
    std::vector<std::vector<BigRational>> expr_big_;
    bool big_ = false;
    bool integral_rewrite_ = true;

    std::vector<std::int64_t> boundary_;
    std::size_t boundary_pivot_ = 0;
    std::vector<std::vector<Integer>> cuspidal_;
};

/// Genus of X_0(N) for N prime.
std::size_t genus_x0(std::uint64_t level);

/// Plain-text dump: first line "N p g", then the matrix row by row.
void write_hecke_dump(std::ostream& out, std::uint64_t level, const HeckeMatrix& m);

}  // namespace modsym
}  // namespace mod2hecke

#endif
