#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qpb/scalar.hpp"

namespace qpb {

using SparseVec = std::map<int, RatQ>;

void sparseAxpy(SparseVec& dst, const RatQ& c, const SparseVec& src);

/// Incremental echelon row space over RatQ. Rows are normalized to a leading
/// coefficient of 1 and keyed by pivot column. Optionally tracks how each
/// stored row combines the inserted vectors, so span membership can report
/// the combination.
class RowSpace {
public:
    explicit RowSpace(bool trackCombos = false) : track_(trackCombos) {}

    /// Reduces v and inserts the residual when independent.
    /// Returns true iff v enlarged the space.
    bool add(SparseVec v);

    /// Residual of v after elimination; empty iff v lies in the span.
    /// When tracking, combo receives coefficients over inserted-vector indices
    /// with v = sum combo_i * inserted_i + residual.
    SparseVec reduce(SparseVec v, SparseVec* combo = nullptr) const;

    bool contains(const SparseVec& v, SparseVec* combo = nullptr) const;

    int dim() const { return static_cast<int>(rows_.size()); }
    int insertedCount() const { return inserted_; }
    const std::map<int, std::pair<SparseVec, SparseVec>>& rows() const { return rows_; }

private:
    std::map<int, std::pair<SparseVec, SparseVec>> rows_;  // pivot -> (row, combo)
    bool track_;
    int inserted_ = 0;
};

/// Homogeneous sparse system: each row encodes sum_c row[c] * x_c + row[ncols] = 0,
/// i.e. column index ncols holds the constant term.
struct LinSystem {
    int ncols = 0;
    std::vector<SparseVec> rows;
};

/// Unique solution of the (affine) system; throws NoSolution / AmbiguousSolution.
std::vector<RatQ> solveUnique(const LinSystem& sys, const std::string& context);

/// Basis of the nullspace of the homogeneous system (constant column ignored).
std::vector<std::vector<RatQ>> nullspaceBasis(const LinSystem& sys);

/// Any one solution (first in free-variable order); nullopt when inconsistent.
std::optional<std::vector<RatQ>> solveAny(const LinSystem& sys);

}  // namespace qpb
