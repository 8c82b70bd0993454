#include "mod2hecke/modsym.hpp"

#include <ostream>
#include <set>

#include "mod2hecke/arith.hpp"
#include "mod2hecke/sparse_solver.hpp"

namespace mod2hecke {

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Integer& x = a(i, k);
            if (sgn(x) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += x * b(k, j);
        }
    }
    return c;
}

Integer IntMatrix::trace() const
{
    Integer t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

namespace modsym {

P1List::P1List(std::int64_t level) : level_(level), inverse_(level, 0)
{
    for (std::int64_t c = 1; c < level; ++c)
        inverse_[c] = inverse_mod(c, level);
}

std::size_t P1List::index(std::int64_t c, std::int64_t d) const
{
    c = mod(c, level_);
    d = mod(d, level_);
    if (c == 0) {
        if (d == 0)
            throw std::invalid_argument("(0:0) is not a point of P^1");
        return static_cast<std::size_t>(level_);
    }
    return static_cast<std::size_t>(d * inverse_[c] % level_);
}

P1Point P1List::point(std::size_t i) const
{
    if (i == static_cast<std::size_t>(level_))
        return {0, 1};
    return {1, static_cast<std::int64_t>(i)};
}

std::vector<P1Point> build_p1(std::uint64_t level)
{
    require_odd_prime(level, "build_p1");
    P1List list(static_cast<std::int64_t>(level));
    std::vector<P1Point> out;
    out.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i)
        out.push_back(list.point(i));
    return out;
}

std::vector<Mat2> heilbronn_merel(std::int64_t n)
{
    std::vector<Mat2> out;
    for (std::int64_t a = 1; a <= n; ++a) {
        std::int64_t q = n / a;
        if (q * a == n) {
            std::int64_t d = q;
            for (std::int64_t b = 0; b < a; ++b)
                out.push_back({a, b, 0, d});
            for (std::int64_t c = 1; c < d; ++c)
                out.push_back({a, 0, c, d});
        }
        for (std::int64_t d = q + 1; d <= n; ++d) {
            std::int64_t bc = a * d - n;
            for (std::int64_t c = bc / a + 1; c < d; ++c) {
                if (bc % c == 0)
                    out.push_back({a, bc / c, c, d});
            }
        }
    }
    return out;
}

std::size_t genus_x0(std::uint64_t level)
{
    require_odd_prime(level, "genus_x0");
    auto n = static_cast<std::int64_t>(level);
    std::int64_t nu2 = 1 + kronecker(-1, n);
    std::int64_t nu3 = 1 + kronecker(-3, n);
    // g = 1 + (N+1)/12 - nu2/4 - nu3/3 - (cusps)/2 with two cusps.
    std::int64_t twelve_g = (n + 1) - 3 * nu2 - 4 * nu3;
    return static_cast<std::size_t>(twelve_g / 12);
}

ModularSymbolSpace::ModularSymbolSpace(std::uint64_t level)
    : level_(level), p1_((require_odd_prime(level, "modular symbol level"),
                          static_cast<std::int64_t>(level)))
{
    const std::size_t n = p1_.size();
    const auto N = static_cast<std::int64_t>(level);

    // Two-term relations x + xS = 0 and the star identification x = x*eta,
    // resolved orbit by orbit with signs.
    symbol_gen_.assign(n, -2);
    symbol_sign_.assign(n, 0);
    std::vector<std::size_t> orbit;
    std::vector<std::int8_t> orbit_sign(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
        if (symbol_gen_[start] != -2)
            continue;
        orbit.clear();
        orbit.push_back(start);
        orbit_sign[start] = 1;
        bool zero = false;
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            std::size_t x = orbit[k];
            P1Point pt = p1_.point(x);
            std::pair<std::size_t, std::int8_t> moves[2] = {
                {p1_.index(pt.d, -pt.c), static_cast<std::int8_t>(-orbit_sign[x])},  // S
                {p1_.index(-pt.c, pt.d), orbit_sign[x]},                             // eta
            };
            for (auto [y, s] : moves) {
                if (orbit_sign[y] == 0) {
                    orbit_sign[y] = s;
                    orbit.push_back(y);
                } else if (orbit_sign[y] != s) {
                    zero = true;
                }
            }
        }
        std::int32_t gen = -1;
        if (!zero) {
            gen = static_cast<std::int32_t>(gen_symbol_.size());
            gen_symbol_.push_back(static_cast<std::int32_t>(start));
        }
        for (std::size_t x : orbit) {
            symbol_gen_[x] = gen;
            symbol_sign_[x] = zero ? 0 : orbit_sign[x];
            orbit_sign[x] = 0;
        }
    }

    try {
        solve_relations<CheckedRational>();
    } catch (const ScalarOverflow&) {
        solve_relations<BigRational>();
    }

    // Boundary: symbol (c:d) maps to [a/c] - [b/d]; a cusp is infinity
    // exactly when its denominator is divisible by N.
    boundary_.assign(basis_.size(), 0);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        P1Point pt = p1_.point(static_cast<std::size_t>(basis_[j]));
        boundary_[j] = (mod(pt.c, N) == 0 ? 1 : 0) - (mod(pt.d, N) == 0 ? 1 : 0);
    }
    bool found = false;
    for (std::size_t j = 0; j < boundary_.size(); ++j) {
        if (boundary_[j] == 1 || boundary_[j] == -1) {
            boundary_pivot_ = j;
            found = true;
            break;
        }
    }
    if (!found)
        throw std::logic_error("boundary map has no unit coefficient at level " + std::to_string(level));
    for (std::size_t j = 0; j < boundary_.size(); ++j) {
        if (j == boundary_pivot_)
            continue;
        std::vector<Integer> v(basis_.size(), 0);
        v[j] = 1;
        v[boundary_pivot_] = -boundary_[j] * boundary_[boundary_pivot_];
        cuspidal_.push_back(std::move(v));
    }
    genus_ = cuspidal_.size();
    if (genus_ != genus_x0(level))
        throw std::logic_error("cuspidal dimension " + std::to_string(genus_) +
                               " disagrees with the genus at level " + std::to_string(level));
}

template <class Scalar>
void ModularSymbolSpace::solve_relations()
{
    const auto ngens = static_cast<std::int32_t>(gen_symbol_.size());
    SparseRelationSolver<Scalar> solver(ngens);

    // Three-term relations x + xT + xT^2 = 0, T = [0 -1; 1 -1], one per T-orbit,
    // deduplicated after two-term reduction.
    const std::size_t n = p1_.size();
    std::vector<bool> seen(n, false);
    std::set<std::vector<std::pair<std::int32_t, std::int64_t>>> rows;
    for (std::size_t x = 0; x < n; ++x) {
        if (seen[x])
            continue;
        std::size_t orbit[3];
        orbit[0] = x;
        for (int k = 1; k < 3; ++k) {
            P1Point pt = p1_.point(orbit[k - 1]);
            orbit[k] = p1_.index(pt.d, -pt.c - pt.d);
        }
        std::vector<std::pair<std::int32_t, std::int64_t>> acc;
        for (std::size_t y : orbit) {
            seen[y] = true;
            if (symbol_gen_[y] >= 0)
                acc.emplace_back(symbol_gen_[y], symbol_sign_[y]);
        }
        std::sort(acc.begin(), acc.end());
        std::vector<std::pair<std::int32_t, std::int64_t>> row;
        for (std::size_t i = 0; i < acc.size();) {
            std::int64_t v = 0;
            std::size_t j = i;
            for (; j < acc.size() && acc[j].first == acc[i].first; ++j)
                v += acc[j].second;
            if (v != 0)
                row.emplace_back(acc[i].first, v);
            i = j;
        }
        if (row.empty())
            continue;
        if (row.front().second < 0) {
            for (auto& e : row)
                e.second = -e.second;
        }
        rows.insert(std::move(row));
    }
    for (const auto& row : rows) {
        SparseVec<Scalar> r;
        for (auto [c, v] : row)
            r.emplace_back(c, Scalar(v));
        solver.add_row(std::move(r));
    }

    auto result = solver.solve();
    basis_.clear();
    gen_free_ = result.free_index;
    for (std::int32_t c : result.free_columns)
        basis_.push_back(gen_symbol_[c]);

    integral_rewrite_ = true;
    if constexpr (std::is_same_v<Scalar, CheckedRational>) {
        big_ = false;
        expr_small_ = std::move(result.pivot_expression);
        expr_big_.clear();
        for (const auto& e : expr_small_)
            for (const auto& v : e)
                integral_rewrite_ = integral_rewrite_ && v.is_integer();
    } else {
        big_ = true;
        expr_big_ = std::move(result.pivot_expression);
        expr_small_.clear();
        for (const auto& e : expr_big_)
            for (const auto& v : e)
                integral_rewrite_ = integral_rewrite_ && is_integral(v);
    }
}

Combination ModularSymbolSpace::rewrite(std::size_t symbol) const
{
    if (symbol >= p1_.size())
        throw std::out_of_range("Manin symbol index out of range");
    Combination out;
    std::int32_t gen = symbol_gen_[symbol];
    if (gen < 0)
        return out;
    int sign = symbol_sign_[symbol];
    if (gen_free_[gen] >= 0) {
        out.emplace_back(gen_free_[gen], BigRational(sign));
        return out;
    }
    const std::size_t nfree = basis_.size();
    for (std::size_t k = 0; k < nfree; ++k) {
        BigRational v = big_ ? expr_big_[gen][k] : expr_small_[gen][k].to_big();
        if (sgn(v) != 0)
            out.emplace_back(static_cast<std::int32_t>(k), sign * v);
    }
    return out;
}

template <class Scalar>
std::vector<Scalar> ModularSymbolSpace::hecke_image(const std::vector<Mat2>& family,
                                                    std::size_t symbol) const
{
    const std::size_t nfree = basis_.size();
    std::vector<Scalar> out(nfree, Scalar(0));
    P1Point pt = p1_.point(symbol);
    for (const Mat2& h : family) {
        std::size_t y = p1_.index(pt.c * h.a + pt.d * h.c, pt.c * h.b + pt.d * h.d);
        std::int32_t gen = symbol_gen_[y];
        if (gen < 0)
            continue;
        const int sign = symbol_sign_[y];
        if (gen_free_[gen] >= 0) {
            out[gen_free_[gen]] += Scalar(sign);
            continue;
        }
        for (std::size_t k = 0; k < nfree; ++k) {
            if constexpr (std::is_same_v<Scalar, CheckedRational>) {
                const CheckedRational& v = expr_small_[gen][k];
                if (!v.is_zero())
                    out[k] += sign > 0 ? v : -v;
            } else {
                BigRational v = big_ ? expr_big_[gen][k] : expr_small_[gen][k].to_big();
                if (sgn(v) != 0)
                    out[k] += sign * v;
            }
        }
    }
    return out;
}

template <class Scalar>
HeckeMatrix ModularSymbolSpace::hecke_matrix_with(std::uint64_t p) const
{
    const auto family = heilbronn_merel(static_cast<std::int64_t>(p));
    const std::size_t nfree = basis_.size();
    std::vector<std::vector<Scalar>> images(nfree);
    for (std::size_t j = 0; j < nfree; ++j)
        images[j] = hecke_image<Scalar>(family, static_cast<std::size_t>(basis_[j]));

    HeckeMatrix m;
    m.p = p;
    m.entries = IntMatrix(genus_, genus_);
    const std::size_t piv = boundary_pivot_;
    std::size_t col = 0;
    for (std::size_t j = 0; j < nfree; ++j) {
        if (j == piv)
            continue;
        // Image of e_j + beta e_piv.
        const Scalar beta(-boundary_[j] * boundary_[piv]);
        Scalar bdry(0);
        std::size_t row = 0;
        for (std::size_t k = 0; k < nfree; ++k) {
            Scalar v = images[j][k];
            if (!is_zero(beta))
                v += beta * images[piv][k];
            bdry += Scalar(boundary_[k]) * v;
            if (k == piv)
                continue;
            if (!is_integral(v))
                throw IntegralityViolation("T_" + std::to_string(p) + " at level " +
                                           std::to_string(level_) +
                                           " has a non-integral entry in column " +
                                           std::to_string(col));
            m.entries(row, col) = to_big(v).get_num();
            ++row;
        }
        if (!is_zero(bdry))
            throw std::logic_error("Hecke image left the cuspidal subspace at level " +
                                   std::to_string(level_));
        ++col;
    }
    return m;
}

HeckeMatrix ModularSymbolSpace::hecke_matrix(std::uint64_t p) const
{
    if (p < 2 || !is_prime(p))
        throw InputError("Hecke index " + std::to_string(p) + " is not prime");
    if (p == level_)
        throw InputError("Hecke index must not divide the level");
    if (!big_) {
        try {
            return hecke_matrix_with<CheckedRational>(p);
        } catch (const ScalarOverflow&) {
        }
    }
    return hecke_matrix_with<BigRational>(p);
}

void write_hecke_dump(std::ostream& out, std::uint64_t level, const HeckeMatrix& m)
{
    const std::size_t g = m.entries.rows();
    out << level << ' ' << m.p << ' ' << g << '\n';
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            if (j)
                out << ' ';
            out << m.entries(i, j);
        }
        out << '\n';
    }
}

}  // namespace modsym
}  // namespace mod2hecke
