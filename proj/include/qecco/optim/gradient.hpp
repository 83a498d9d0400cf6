#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qecco {

using LossFn = std::function<double(std::span<const double>)>;
using GradFn = std::function<std::vector<double>(std::span<const double>)>;

/// Central differences (f(x+h e_i) - f(x-h e_i)) / 2h per coordinate.
std::vector<double> central_difference_gradient(const LossFn& f, std::span<const double> x,
                                                double h = 1e-6);

/// Five-point fourth-order stencil, used as the independent cross-check.
std::vector<double> fourth_order_gradient(const LossFn& f, std::span<const double> x,
                                          double h = 1e-4);

}  // namespace qecco
