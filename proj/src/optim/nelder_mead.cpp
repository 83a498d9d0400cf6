#include "qecco/optim/nelder_mead.hpp"

#include <algorithm>
#include <cmath>

namespace qecco {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double step, double tol,
                             std::size_t max_iter) {
    const std::size_t n = start.size();
    NelderMeadResult result;

    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 1; i <= n; ++i) pts[i][i - 1] += step;
    for (std::size_t i = 0; i <= n; ++i) {
        vals[i] = f(pts[i]);
        ++result.evaluations;
    }

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::vector<std::size_t> order(n + 1);
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return vals[a] < vals[b];
        });
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(vals[worst] - vals[best]) < tol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
        }
        for (auto& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double alpha) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d) {
                p[d] = centroid[d] + alpha * (pts[worst][d] - centroid[d]);
            }
            return p;
        };

        const auto reflected = blend(-1.0);
        const double fr = f(reflected);
        ++result.evaluations;
        if (fr < vals[order[0]]) {
            const auto expanded = blend(-2.0);
            const double fe = f(expanded);
            ++result.evaluations;
            if (fe < fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = fr;
            continue;
        }
        const auto contracted = blend(0.5);
        const double fc = f(contracted);
        ++result.evaluations;
        if (fc < vals[worst]) {
            pts[worst] = contracted;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {  // shrink toward the best point
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d) {
                pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
            }
            vals[i] = f(pts[i]);
            ++result.evaluations;
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (vals[i] < vals[best]) best = i;
    }
    result.x = pts[best];
    result.value = vals[best];
    return result;
}

}  // namespace qecco
