// SPDX-License-Identifier: MIT
//
// Compact Nelder-Mead simplex minimizer for the low-dimensional searches
// (Bloch-ball maximizations, sampling refinements, test-side brute force).
#pragma once

#include <algorithm>
#include <functional>
#include <vector>

namespace capbound {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& start, double step,
                                    int maxIter) {
    const int n = static_cast<int>(start.size());
    std::vector<std::vector<double>> pts(n + 1, start);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += step;
    std::vector<double> val(n + 1);
    for (int i = 0; i <= n; ++i) val[i] = f(pts[i]);

    std::vector<int> ord(n + 1);
    auto sort_simplex = [&]() {
        for (int i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return val[a] < val[b]; });
    };

    for (int it = 0; it < maxIter; ++it) {
        sort_simplex();
        const int best = ord[0], worst = ord[n], second = ord[n - 1];
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (int k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;
        }
        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (int k = 0; k < n; ++k) p[k] = centroid[k] + t * (centroid[k] - pts[worst][k]);
            return p;
        };
        const auto refl = blend(1.0);
        const double fr = f(refl);
        if (fr < val[best]) {
            const auto exp_ = blend(2.0);
            const double fe = f(exp_);
            if (fe < fr) {
                pts[worst] = exp_;
                val[worst] = fe;
            } else {
                pts[worst] = refl;
                val[worst] = fr;
            }
        } else if (fr < val[second]) {
            pts[worst] = refl;
            val[worst] = fr;
        } else {
            const auto con = blend(fr < val[worst] ? 0.5 : -0.5);
            const double fc = f(con);
            if (fc < std::min(fr, val[worst])) {
                pts[worst] = con;
                val[worst] = fc;
            } else {  // shrink toward best
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int k = 0; k < n; ++k)
                        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
                    val[i] = f(pts[i]);
                }
            }
        }
    }
    sort_simplex();
    return {pts[ord[0]], val[ord[0]]};
}

}  // namespace capbound
