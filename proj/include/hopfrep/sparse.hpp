// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Nullspaces of sparse linear systems. Hom and extension systems have
// hundreds of unknowns but only a handful of nonzeros per equation.

#ifndef HOPFREP_SPARSE_HPP
#define HOPFREP_SPARSE_HPP

#include <hopfrep/matrix.hpp>

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace hopfrep {

using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;  // sorted by column

// Accumulates equations into a row echelon form keyed by leading column.
class SparseSystem {
public:
    explicit SparseSystem(std::size_t ncols) : n_(ncols) {}

    std::size_t cols() const { return n_; }
    std::size_t rank() const { return piv_.size(); }

    // Adds an equation sum row[j] x_j = 0. Entries need not be sorted or unique.
    void add(SparseRow row) {
        row = normalize(std::move(row));
        while (!row.empty()) {
            auto it = piv_.find(row.front().first);
            if (it == piv_.end()) break;
            Scalar f = row.front().second;
            row = axpy(row, it->second, -f);
        }
        if (row.empty()) return;
        Scalar inv = row.front().second.inv();
        for (auto& e : row) e.second *= inv;
        piv_.emplace(row.front().first, std::move(row));
    }

    // Basis of the solution space, one vector per free column, in increasing
    // order of the free column.
    std::vector<Vec> nullspace() const {
        std::map<std::size_t, SparseRow> red;  // fully reduced pivot rows
        for (auto it = piv_.rbegin(); it != piv_.rend(); ++it) {
            SparseRow row = it->second;
            SparseRow out;
            // eliminate later pivot columns using already-reduced rows
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t k = 1; k < row.size(); ++k) {
                    auto r = red.find(row[k].first);
                    if (r == red.end()) continue;
                    Scalar f = row[k].second;
                    row = axpy(row, r->second, -f);
                    changed = true;
                    break;
                }
            }
            red.emplace(it->first, std::move(row));
        }
        std::vector<Vec> basis;
        for (std::size_t f = 0; f < n_; ++f) {
            if (red.count(f)) continue;
            Vec v(n_);
            v[f] = 1;
            basis.push_back(std::move(v));
        }
        if (basis.empty()) return basis;
        std::vector<std::size_t> slot(n_, n_);
        std::size_t k = 0;
        for (std::size_t f = 0; f < n_; ++f)
            if (!red.count(f)) slot[f] = k++;
        for (auto& [p, row] : red)
            for (std::size_t i = 1; i < row.size(); ++i) basis[slot[row[i].first]][p] = -row[i].second;
        return basis;
    }

private:
    static SparseRow normalize(SparseRow row) {
        std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
        SparseRow out;
        for (auto& e : row) {
            if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
            else out.push_back(e);
        }
        SparseRow clean;
        for (auto& e : out)
            if (!e.second.is_zero()) clean.push_back(std::move(e));
        return clean;
    }

    // a + f * b
    static SparseRow axpy(const SparseRow& a, const SparseRow& b, const Scalar& f) {
        SparseRow out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, f * b[j].second);
                ++j;
            } else {
                Scalar v = a[i].second + f * b[j].second;
                if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    std::size_t n_;
    std::map<std::size_t, SparseRow> piv_;
};

}  // namespace hopfrep

#endif  // HOPFREP_SPARSE_HPP
