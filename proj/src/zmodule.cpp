#include "spingr/zmodule.hpp"

#include <algorithm>

namespace spingr {

namespace {

BigInt abs_num(const Dyadic& d) { return d.num() < 0 ? BigInt(-d.num()) : d.num(); }

} // namespace

ColEchelon::ColEchelon(std::vector<long> row_vexp, std::vector<LatCol> cols)
    : row_vexp_(std::move(row_vexp)), cols_(std::move(cols))
{
    const int nr = rows();
    row_pivot_.assign(static_cast<size_t>(nr), -1);
    std::vector<bool> used(cols_.size(), false);

    for (int r = 0; r < nr; ++r) {
        // Pivot choice: minimal val2, then smallest absolute numerator, then
        // column index.  Deterministic.
        int best = -1;
        for (size_t c = 0; c < cols_.size(); ++c) {
            if (used[c] || cols_[c].v[static_cast<size_t>(r)].is_zero())
                continue;
            if (best < 0) {
                best = static_cast<int>(c);
                continue;
            }
            const Dyadic& a = cols_[c].v[static_cast<size_t>(r)];
            const Dyadic& b = cols_[static_cast<size_t>(best)].v[static_cast<size_t>(r)];
            if (a.val2() < b.val2() ||
                (a.val2() == b.val2() && abs_num(a) < abs_num(b)))
                best = static_cast<int>(c);
        }
        if (best < 0)
            continue;

        LatCol& pc = cols_[static_cast<size_t>(best)];
        Dyadic pivot = pc.v[static_cast<size_t>(r)];
        long pval = pivot.val2().value();
        // Normalize the pivot column so the pivot entry is an exact 2-power.
        Dyadic unit = pivot / Dyadic::pow2(pval);
        for (auto& e : pc.v)
            e = e / unit;
        pivot = pc.v[static_cast<size_t>(r)];

        for (size_t c = 0; c < cols_.size(); ++c) {
            if (used[c] || c == static_cast<size_t>(best))
                continue;
            Dyadic& e = cols_[c].v[static_cast<size_t>(r)];
            if (e.is_zero())
                continue;
            Dyadic lambda = e / pivot; // exact in Z_(2): pivot has minimal val2
            for (int i = 0; i < nr; ++i)
                cols_[c].v[static_cast<size_t>(i)] -=
                    lambda * pc.v[static_cast<size_t>(i)];
            cols_[c].q = Val2::min(cols_[c].q, pc.q + lambda.val2());
        }

        used[static_cast<size_t>(best)] = true;
        Pivot p;
        p.row = r;
        p.col = best;
        p.val2 = pval;
        p.q_valid = Val2(pval + row_vexp_[static_cast<size_t>(r)]) < pc.q;
        pivots_.push_back(p);
        row_pivot_[static_cast<size_t>(r)] = static_cast<int>(pivots_.size()) - 1;
    }
}

bool ColEchelon::contains(DVec x) const { return contains_with_coords(std::move(x), nullptr); }

bool ColEchelon::contains_with_coords(DVec x, std::vector<std::pair<int, Dyadic>>* coords) const
{
    if (static_cast<int>(x.size()) != rows())
        throw std::invalid_argument("ColEchelon: dimension mismatch");
    if (coords)
        coords->clear();
    for (int r = 0; r < rows(); ++r) {
        Dyadic& e = x[static_cast<size_t>(r)];
        if (e.is_zero())
            continue;
        int pi = row_pivot_[static_cast<size_t>(r)];
        if (pi < 0)
            return false;
        const Pivot& p = pivots_[static_cast<size_t>(pi)];
        const LatCol& pc = cols_[static_cast<size_t>(p.col)];
        const Dyadic& pivot = pc.v[static_cast<size_t>(r)];
        if (e.val2() < pivot.val2())
            return false;
        Dyadic lambda = e / pivot;
        for (int i = r; i < rows(); ++i)
            x[static_cast<size_t>(i)] -= lambda * pc.v[static_cast<size_t>(i)];
        if (coords)
            coords->emplace_back(pi, lambda);
    }
    return true;
}

std::vector<long> snf_valuations(std::vector<DVec> cols)
{
    std::vector<long> vals;
    if (cols.empty())
        return vals;
    size_t nr = cols[0].size();
    std::vector<bool> row_done(nr, false), col_done(cols.size(), false);

    for (;;) {
        int bi = -1, bj = -1;
        for (size_t j = 0; j < cols.size(); ++j) {
            if (col_done[j])
                continue;
            for (size_t i = 0; i < nr; ++i) {
                if (row_done[i] || cols[j][i].is_zero())
                    continue;
                if (bi < 0 ||
                    cols[j][i].val2() < cols[static_cast<size_t>(bj)][static_cast<size_t>(bi)].val2() ||
                    (cols[j][i].val2() == cols[static_cast<size_t>(bj)][static_cast<size_t>(bi)].val2() &&
                     abs_num(cols[j][i]) < abs_num(cols[static_cast<size_t>(bj)][static_cast<size_t>(bi)]))) {
                    bi = static_cast<int>(i);
                    bj = static_cast<int>(j);
                }
            }
        }
        if (bi < 0)
            break;
        Dyadic pivot = cols[static_cast<size_t>(bj)][static_cast<size_t>(bi)];
        vals.push_back(pivot.val2().value());
        // Clear the pivot row across columns, then the pivot column is spent.
        for (size_t j = 0; j < cols.size(); ++j) {
            if (col_done[j] || j == static_cast<size_t>(bj) ||
                cols[j][static_cast<size_t>(bi)].is_zero())
                continue;
            Dyadic lambda = cols[j][static_cast<size_t>(bi)] / pivot;
            for (size_t i = 0; i < nr; ++i)
                cols[j][i] -= lambda * cols[static_cast<size_t>(bj)][i];
        }
        row_done[static_cast<size_t>(bi)] = true;
        col_done[static_cast<size_t>(bj)] = true;
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

bool snf_membership(std::vector<DVec> cols, DVec x)
{
    const size_t nr = x.size();
    for (const auto& c : cols)
        if (c.size() != nr)
            throw std::invalid_argument("snf_membership: dimension mismatch");
    std::vector<bool> row_done(nr, false), col_done(cols.size(), false);
    std::vector<std::pair<size_t, long>> diag; // (row, pivot valuation)

    for (;;) {
        int bi = -1, bj = -1;
        for (size_t j = 0; j < cols.size(); ++j) {
            if (col_done[j])
                continue;
            for (size_t i = 0; i < nr; ++i) {
                if (row_done[i] || cols[j][i].is_zero())
                    continue;
                if (bi < 0 ||
                    cols[j][i].val2() <
                        cols[static_cast<size_t>(bj)][static_cast<size_t>(bi)].val2()) {
                    bi = static_cast<int>(i);
                    bj = static_cast<int>(j);
                }
            }
        }
        if (bi < 0)
            break;
        const size_t pi = static_cast<size_t>(bi), pj = static_cast<size_t>(bj);
        Dyadic pivot = cols[pj][pi];
        // Clear the pivot row with column operations.
        for (size_t j = 0; j < cols.size(); ++j) {
            if (col_done[j] || j == pj || cols[j][pi].is_zero())
                continue;
            Dyadic lambda = cols[j][pi] / pivot;
            for (size_t i = 0; i < nr; ++i)
                cols[j][i] -= lambda * cols[pj][i];
        }
        // Clear the pivot column with row operations; other columns are zero
        // on the pivot row already, so only x is affected.
        for (size_t i = 0; i < nr; ++i) {
            if (i == pi || row_done[i] || cols[pj][i].is_zero())
                continue;
            Dyadic lambda = cols[pj][i] / pivot;
            x[i] -= lambda * x[pi];
            cols[pj][i] = Dyadic();
        }
        diag.emplace_back(pi, pivot.val2().value());
        row_done[pi] = true;
        col_done[pj] = true;
    }
    for (size_t i = 0; i < nr; ++i)
        if (!row_done[i] && !x[i].is_zero())
            return false;
    for (auto& [i, val] : diag)
        if (x[i].val2() < Val2(val))
            return false;
    return true;
}

} // namespace spingr
