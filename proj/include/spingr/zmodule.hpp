#pragma once

#include "spingr/dyadic.hpp"

#include <utility>
#include <vector>

namespace spingr {

using DVec = std::vector<Dyadic>;

/// A lattice generator: a dense coordinate vector plus the filtration level
/// below which the column is exact (its unknown tail has valuation >= q).
struct LatCol {
    DVec v;
    Val2 q = Val2::infinity();
    int tag = -1;
};

/// Column echelon form over Z_(2) with valuation-aware pivoting.  Rows carry
/// a v-exponent so that entry valuations are val2(entry) + row_vexp.
class ColEchelon {
public:
    ColEchelon(std::vector<long> row_vexp, std::vector<LatCol> cols);

    int rows() const { return static_cast<int>(row_vexp_.size()); }
    int rank() const { return static_cast<int>(pivots_.size()); }

    struct Pivot {
        int row = -1;
        int col = -1;    // index into cols()
        long val2 = 0;   // valuation of the (normalized) pivot entry
        bool q_valid = false;
    };
    const std::vector<Pivot>& pivots() const { return pivots_; }
    const std::vector<LatCol>& cols() const { return cols_; }
    int pivot_at_row(int r) const { return row_pivot_.at(static_cast<size_t>(r)); }

    /// True when every pivot entry sits strictly below its column's tail
    /// level, i.e. the echelon structure is stable under the unknown tails.
    bool pivots_q_valid() const
    {
        for (const auto& p : pivots_)
            if (!p.q_valid)
                return false;
        return true;
    }

    /// Lattice membership of x over Z_(2).
    bool contains(DVec x) const;

    /// Membership with coordinates w.r.t. the pivot columns.
    bool contains_with_coords(DVec x, std::vector<std::pair<int, Dyadic>>* coords) const;

private:
    std::vector<long> row_vexp_;
    std::vector<LatCol> cols_;
    std::vector<Pivot> pivots_;
    std::vector<int> row_pivot_;
};

/// Invariant-factor valuations of a matrix over Z_(2) (ascending, one entry
/// per nonzero invariant factor; units appear as zeros).
std::vector<long> snf_valuations(std::vector<DVec> cols);

/// Column-span membership decided through a full Smith reduction with row
/// transforms applied to x.  Independent of the echelon route.
bool snf_membership(std::vector<DVec> cols, DVec x);

} // namespace spingr
