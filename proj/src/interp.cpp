#include "mcflow/interp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mcflow/errors.hpp"

namespace mcflow {

void lagrange_basis(int m, double xi, std::array<double, 4>& val,
                    std::array<double, 4>& der) {
    for (int i = 0; i < m; ++i) {
        double v = 1.0;
        for (int j = 0; j < m; ++j) {
            if (j != i) v *= (xi - j) / static_cast<double>(i - j);
        }
        val[i] = v;
        double d = 0.0;
        for (int k = 0; k < m; ++k) {
            if (k == i) continue;
            double term = 1.0 / static_cast<double>(i - k);
            for (int j = 0; j < m; ++j) {
                if (j == i || j == k) continue;
                term *= (xi - j) / static_cast<double>(i - j);
            }
            d += term;
        }
        der[i] = d;
    }
}

void collocation_at_zero(const double* t, int n, double* val, double* der) {
    for (int i = 0; i < n; ++i) {
        double v = 1.0;
        for (int j = 0; j < n; ++j)
            if (j != i) v *= (0.0 - t[j]) / (t[i] - t[j]);
        val[i] = v;
        double d = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            double term = 1.0 / (t[i] - t[k]);
            for (int j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                term *= (0.0 - t[j]) / (t[i] - t[j]);
            }
            d += term;
        }
        der[i] = d;
    }
}

namespace {

// Candidate anchor shifts ordered by distance so the selected patch is
// deterministic and as centered as possible.
const std::vector<std::pair<int, int>>& shift_order() {
    static const std::vector<std::pair<int, int>> order = [] {
        std::vector<std::pair<int, int>> s;
        for (int dx = -3; dx <= 3; ++dx)
            for (int dy = -3; dy <= 3; ++dy) s.emplace_back(dx, dy);
        std::stable_sort(s.begin(), s.end(), [](auto a, auto b) {
            int ra = std::max(std::abs(a.first), std::abs(a.second));
            int rb = std::max(std::abs(b.first), std::abs(b.second));
            if (ra != rb) return ra < rb;
            int sa = std::abs(a.first) + std::abs(a.second);
            int sb = std::abs(b.first) + std::abs(b.second);
            if (sa != sb) return sa < sb;
            return a < b;
        });
        return s;
    }();
    return order;
}

}  // namespace

Patch make_patch(const LatticeView& lat, Vec2 target, int m) {
    const bool one_d = lat.ny == 1;
    const int my = one_d ? 1 : m;
    const double fx = (target.x - lat.origin.x) / lat.h;
    const double fy = (target.y - lat.origin.y) / lat.h;

    int ax0, ay0;
    if (m == 3) {
        ax0 = static_cast<int>(std::lround(fx)) - 1;
        ay0 = one_d ? 0 : static_cast<int>(std::lround(fy)) - 1;
    } else {
        ax0 = static_cast<int>(std::floor(fx)) - 1;
        ay0 = one_d ? 0 : static_cast<int>(std::floor(fy)) - 1;
    }

    for (auto [sx, sy] : shift_order()) {
        if (one_d && sy != 0) continue;
        const int ax = ax0 + sx;
        const int ay = ay0 + sy;
        if (ax < 0 || ax + m > lat.nx) continue;
        if (ay < 0 || ay + my > lat.ny) continue;
        bool ok = true;
        for (int l = 0; l < my && ok; ++l)
            for (int k = 0; k < m && ok; ++k)
                if (!lat.usable(ax + k, ay + l)) ok = false;
        if (!ok) continue;

        Patch p;
        p.m = m;
        p.my = my;
        std::array<double, 4> bx{}, dbx{}, by{}, dby{};
        lagrange_basis(m, fx - ax, bx, dbx);
        if (one_d) {
            by[0] = 1.0;
            dby[0] = 0.0;
        } else {
            lagrange_basis(m, fy - ay, by, dby);
        }
        for (int l = 0; l < my; ++l) {
            for (int k = 0; k < m; ++k) {
                const int idx = l * m + k;
                p.nodes[idx] = lat.index(ax + k, ay + l);
                p.w_value[idx] = bx[k] * by[l];
                p.w_gx[idx] = dbx[k] / lat.h * by[l];
                p.w_gy[idx] = bx[k] * dby[l] / lat.h;
            }
        }
        return p;
    }
    throw ResolutionError("no all-interior interpolation patch near point; grid too coarse");
}

}  // namespace mcflow
