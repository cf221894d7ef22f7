#pragma once

#include <vector>

#include "scatter/numeric.hpp"

namespace scat {

// Exact convex-hull membership: is `target` a convex combination of `points`?
// Phase-1 simplex with Bland's rule on the equality system
// [points; 1] lambda = [target; 1], lambda >= 0.
inline bool in_convex_hull(const std::vector<QVec>& points, const QVec& target) {
    if (points.empty()) return false;
    const int dim = static_cast<int>(target.size());
    const int n = static_cast<int>(points.size());
    const int rows = dim + 1;

    // tableau over columns: n structural + rows artificial + rhs
    std::vector<QVec> T(rows, QVec(n + rows + 1, Rat(0)));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < n; ++j) T[i][j] = i < dim ? points[j][i] : Rat(1);
        T[i][n + rows] = i < dim ? target[i] : Rat(1);
        if (T[i][n + rows] < 0)
            for (auto& x : T[i]) x = -x;
        T[i][n + i] = 1;
    }
    std::vector<int> basis(rows);
    QVec obj(n + rows + 1, Rat(0)); // phase-1 reduced costs: minimize sum of artificials
    for (int i = 0; i < rows; ++i) obj[n + i] = 1;
    for (int i = 0; i < rows; ++i) {
        basis[i] = n + i;
        for (int j = 0; j <= n + rows; ++j) obj[j] -= T[i][j];
    }
    for (;;) {
        int enter = -1;
        for (int j = 0; j < n + rows; ++j)
            if (obj[j] < 0) {
                enter = j;
                break; // Bland: smallest index
            }
        if (enter < 0) break;
        int leave = -1;
        Rat best_ratio = 0;
        for (int i = 0; i < rows; ++i) {
            if (T[i][enter] <= 0) continue;
            Rat ratio = T[i][n + rows] / T[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return false; // unbounded phase-1: cannot happen, bail out
        Rat piv = T[leave][enter];
        for (auto& x : T[leave]) x /= piv;
        for (int i = 0; i < rows; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rat f = T[i][enter];
            for (int j = 0; j <= n + rows; ++j) T[i][j] -= f * T[leave][j];
        }
        Rat fo = obj[enter];
        if (fo != 0)
            for (int j = 0; j <= n + rows; ++j) obj[j] -= fo * T[leave][j];
        basis[leave] = enter;
    }
    return obj[n + rows] == 0; // -(phase-1 optimum) accumulated in the rhs slot
}

// Indices of the vertices (extreme points) of the convex hull of `points`.
inline std::vector<int> hull_vertices(const std::vector<QVec>& points) {
    std::vector<int> verts;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        std::vector<QVec> others;
        for (int j = 0; j < static_cast<int>(points.size()); ++j)
            if (j != i) others.push_back(points[j]);
        if (others.empty() || !in_convex_hull(others, points[i])) verts.push_back(i);
    }
    return verts;
}

} // namespace scat
