#ifndef MOD2HECKE_SPARSE_SOLVER_HPP
#define MOD2HECKE_SPARSE_SOLVER_HPP

#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "mod2hecke/rational.hpp"

namespace mod2hecke {

template <class Scalar>
using SparseVec = std::vector<std::pair<std::int32_t, Scalar>>;  // sorted by column

/*
 * Solves a homogeneous sparse linear system over Q. Produces the set of free
 * columns and, for every column, its expression as a combination of the free
 * columns (a free column maps to its own unit vector). Uses Markowitz-style
 * pivoting with a preference for unit pivots so that integer systems stay
 * integral whenever possible.
 */
template <class Scalar>
class SparseRelationSolver {
  public:
    struct Result {
        std::vector<std::int32_t> free_columns;            // ascending
        std::vector<std::int32_t> free_index;              // column -> index in free_columns or -1
        std::vector<std::vector<Scalar>> pivot_expression; // column -> dense expr (empty for free)
        std::vector<bool> is_pivot;
    };

    explicit SparseRelationSolver(std::int32_t ncols) : ncols_(ncols), col_rows_(ncols) {}

    void add_row(SparseVec<Scalar> row)
    {
        if (row.empty())
            return;
        rows_.push_back(std::move(row));
        alive_.push_back(true);
    }

    Result solve()
    {
        std::vector<bool> pivoted(ncols_, false);
        std::vector<std::pair<std::int32_t, SparseVec<Scalar>>> pivots;  // (column, normalized row)

        for (std::int32_t r = 0; r < static_cast<std::int32_t>(rows_.size()); ++r) {
            for (auto& [c, v] : rows_[r])
                col_rows_[c].push_back(r);
        }
        using Entry = std::pair<std::size_t, std::int32_t>;  // (length, row)
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        for (std::int32_t r = 0; r < static_cast<std::int32_t>(rows_.size()); ++r)
            queue.emplace(rows_[r].size(), r);

        while (!queue.empty()) {
            auto [len, r] = queue.top();
            queue.pop();
            if (!alive_[r] || rows_[r].size() != len)
                continue;
            SparseVec<Scalar>& row = rows_[r];
            alive_[r] = false;
            if (row.empty())
                continue;

            // Pick the pivot: unit coefficient first, then the sparsest column.
            std::size_t best = 0;
            bool best_unit = false;
            std::size_t best_count = SIZE_MAX;
            for (std::size_t i = 0; i < row.size(); ++i) {
                bool unit = is_unit(row[i].second);
                std::size_t count = col_rows_[row[i].first].size();
                if ((unit && !best_unit) || (unit == best_unit && count < best_count)) {
                    best = i;
                    best_unit = unit;
                    best_count = count;
                }
            }
            std::int32_t pc = row[best].first;
            Scalar pv = row[best].second;
            if (!is_unit(pv) || pv != Scalar(1)) {
                for (auto& [c, v] : row)
                    v = v / pv;
            }

            for (std::int32_t other : col_rows_[pc]) {
                if (other == r || !alive_[other])
                    continue;
                SparseVec<Scalar>& target = rows_[other];
                auto it = std::lower_bound(target.begin(), target.end(), pc,
                                           [](const auto& e, std::int32_t c) { return e.first < c; });
                if (it == target.end() || it->first != pc)
                    continue;  // stale column list entry
                Scalar factor = it->second;
                axpy(target, row, -factor, other);
                queue.emplace(target.size(), other);
            }
            col_rows_[pc].clear();
            col_rows_[pc].shrink_to_fit();
            pivoted[pc] = true;
            pivots.emplace_back(pc, std::move(row));
            row.clear();
        }

        Result res;
        res.is_pivot = pivoted;
        res.free_index.assign(ncols_, -1);
        for (std::int32_t c = 0; c < ncols_; ++c) {
            if (!pivoted[c]) {
                res.free_index[c] = static_cast<std::int32_t>(res.free_columns.size());
                res.free_columns.push_back(c);
            }
        }
        const std::size_t nfree = res.free_columns.size();
        res.pivot_expression.assign(ncols_, {});
        // Later pivots never reference earlier ones, so go backwards.
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            auto& [pc, row] = *it;
            std::vector<Scalar> expr(nfree, Scalar(0));
            for (auto& [c, v] : row) {
                if (c == pc)
                    continue;
                if (!pivoted[c]) {
                    expr[res.free_index[c]] -= v;
                } else {
                    const auto& sub = res.pivot_expression[c];
                    for (std::size_t k = 0; k < nfree; ++k) {
                        if (!is_zero(sub[k]))
                            expr[k] -= v * sub[k];
                    }
                }
            }
            res.pivot_expression[pc] = std::move(expr);
            row.clear();
            row.shrink_to_fit();
        }
        return res;
    }

  private:
    // target += factor * src, keeping the column index lists current.
    void axpy(SparseVec<Scalar>& target, const SparseVec<Scalar>& src, const Scalar& factor,
              std::int32_t target_id)
    {
        SparseVec<Scalar> out;
        out.reserve(target.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < target.size() || j < src.size()) {
            if (j == src.size() || (i < target.size() && target[i].first < src[j].first)) {
                out.push_back(std::move(target[i++]));
            } else if (i == target.size() || src[j].first < target[i].first) {
                out.emplace_back(src[j].first, factor * src[j].second);
                col_rows_[src[j].first].push_back(target_id);
                ++j;
            } else {
                Scalar v = target[i].second + factor * src[j].second;
                if (!is_zero(v))
                    out.emplace_back(target[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        target = std::move(out);
    }

    std::int32_t ncols_;
    std::vector<SparseVec<Scalar>> rows_;
    std::vector<bool> alive_;
    std::vector<std::vector<std::int32_t>> col_rows_;
};

}  // namespace mod2hecke

#endif
