#include "qpb/linalg.hpp"

#include <algorithm>

#include "qpb/errors.hpp"

namespace qpb {

void sparseAxpy(SparseVec& dst, const RatQ& c, const SparseVec& src) {
    if (c.isZero()) return;
    for (const auto& [col, v] : src) {
        auto it = dst.find(col);
        if (it == dst.end()) {
            RatQ nv = c * v;
            if (!nv.isZero()) dst.emplace(col, std::move(nv));
        } else {
            it->second += c * v;
            if (it->second.isZero()) dst.erase(it);
        }
    }
}

SparseVec RowSpace::reduce(SparseVec v, SparseVec* combo) const {
    if (combo) combo->clear();
    while (!v.empty()) {
        int lead = v.begin()->first;
        auto it = rows_.find(lead);
        if (it == rows_.end()) break;
        RatQ c = v.begin()->second;
        sparseAxpy(v, -c, it->second.first);
        if (combo && track_) sparseAxpy(*combo, c, it->second.second);
    }
    return v;
}

bool RowSpace::add(SparseVec v) {
    SparseVec combo;
    SparseVec res = reduce(std::move(v), track_ ? &combo : nullptr);
    if (res.empty()) {
        ++inserted_;
        return false;
    }
    int idx = inserted_++;
    RatQ lc = res.begin()->second;
    RatQ inv = lc.inv();
    SparseVec row;
    for (auto& [col, c] : res) row[col] = c * inv;
    SparseVec rowCombo;
    if (track_) {
        // row = (v - sum combo_i inserted_i) / lc
        rowCombo[idx] = inv;
        sparseAxpy(rowCombo, -RatQ::one(), [&] {
            SparseVec scaled;
            for (const auto& [i, c] : combo) scaled[i] = c * inv;
            return scaled;
        }());
    }
    const int pivot = row.begin()->first;
    rows_.emplace(pivot, std::make_pair(std::move(row), std::move(rowCombo)));
    return true;
}

bool RowSpace::contains(const SparseVec& v, SparseVec* combo) const {
    return reduce(v, combo).empty();
}

namespace {

/// Echelonizes the rows; returns map pivot -> row.
std::map<int, SparseVec> echelon(const LinSystem& sys) {
    std::map<int, SparseVec> rows;
    for (const auto& r0 : sys.rows) {
        SparseVec v = r0;
        while (!v.empty()) {
            int lead = v.begin()->first;
            auto it = rows.find(lead);
            if (it == rows.end()) break;
            RatQ c = v.begin()->second;
            sparseAxpy(v, -c, it->second);
        }
        if (v.empty()) continue;
        RatQ inv = v.begin()->second.inv();
        SparseVec row;
        for (auto& [col, c] : v) row[col] = c * inv;
        const int pivot = row.begin()->first;
        rows.emplace(pivot, std::move(row));
    }
    return rows;
}

}  // namespace

std::vector<RatQ> solveUnique(const LinSystem& sys, const std::string& context) {
    auto rows = echelon(sys);
    if (rows.count(sys.ncols)) throw NoSolution(context);
    for (int c = 0; c < sys.ncols; ++c)
        if (!rows.count(c)) throw AmbiguousSolution(context + " (free variable " + std::to_string(c) + ")");
    std::vector<RatQ> x(static_cast<std::size_t>(sys.ncols), RatQ::zero());
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        int p = it->first;
        RatQ acc = RatQ::zero();
        for (const auto& [col, c] : it->second) {
            if (col == p) continue;
            if (col == sys.ncols)
                acc += c;
            else
                acc += c * x[static_cast<std::size_t>(col)];
        }
        x[static_cast<std::size_t>(p)] = -acc;
    }
    return x;
}

std::vector<std::vector<RatQ>> nullspaceBasis(const LinSystem& sys) {
    auto rows = echelon(sys);
    std::vector<std::vector<RatQ>> basis;
    for (int f = 0; f < sys.ncols; ++f) {
        if (rows.count(f)) continue;
        std::vector<RatQ> v(static_cast<std::size_t>(sys.ncols), RatQ::zero());
        v[static_cast<std::size_t>(f)] = RatQ::one();
        for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
            int p = it->first;
            if (p >= sys.ncols) continue;
            RatQ acc = RatQ::zero();
            for (const auto& [col, c] : it->second) {
                if (col == p || col >= sys.ncols) continue;
                acc += c * v[static_cast<std::size_t>(col)];
            }
            v[static_cast<std::size_t>(p)] = -acc;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<RatQ>> solveAny(const LinSystem& sys) {
    auto rows = echelon(sys);
    if (rows.count(sys.ncols)) return std::nullopt;
    std::vector<RatQ> x(static_cast<std::size_t>(sys.ncols), RatQ::zero());
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        int p = it->first;
        RatQ acc = RatQ::zero();
        for (const auto& [col, c] : it->second) {
            if (col == p) continue;
            if (col == sys.ncols)
                acc += c;
            else
                acc += c * x[static_cast<std::size_t>(col)];
        }
        x[static_cast<std::size_t>(p)] = -acc;
    }
    return x;
}

}  // namespace qpb
