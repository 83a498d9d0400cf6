#pragma once

#include <functional>
#include <vector>

namespace qecco {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Derivative-free simplex minimization. Terminates when the simplex value
/// spread falls below `tol` or after `max_iter` iterations.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double step, double tol,
                             std::size_t max_iter);

}  // namespace qecco
