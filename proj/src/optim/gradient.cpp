#include "qecco/optim/gradient.hpp"

#include <cmath>
#include <stdexcept>

namespace qecco {

std::vector<double> central_difference_gradient(const LossFn& f, std::span<const double> x,
                                                double h) {
    if (h <= 0.0) throw std::invalid_argument("step must be positive");
    std::vector<double> work(x.begin(), x.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = work[i];
        work[i] = saved + h;
        const double up = f(work);
        work[i] = saved - h;
        const double down = f(work);
        work[i] = saved;
        if (!std::isfinite(up) || !std::isfinite(down)) {
            throw std::runtime_error("loss is not finite near the evaluation point");
        }
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

std::vector<double> fourth_order_gradient(const LossFn& f, std::span<const double> x, double h) {
    if (h <= 0.0) throw std::invalid_argument("step must be positive");
    std::vector<double> work(x.begin(), x.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = work[i];
        work[i] = saved + 2.0 * h;
        const double p2 = f(work);
        work[i] = saved + h;
        const double p1 = f(work);
        work[i] = saved - h;
        const double m1 = f(work);
        work[i] = saved - 2.0 * h;
        const double m2 = f(work);
        work[i] = saved;
        grad[i] = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    }
    return grad;
}

}  // namespace qecco
