#include "qecco/simcore/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qecco {

namespace {

double offdiag_norm(const std::vector<cplx>& a, std::size_t dim) {
    double s = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r + 1; c < dim; ++c) s += std::norm(a[r * dim + c]);
    }
    return std::sqrt(2.0 * s);
}

}  // namespace

std::vector<double> jacobi_eigh(std::vector<cplx> a, std::size_t dim, std::vector<cplx>* vectors) {
    if (a.size() != dim * dim) throw std::invalid_argument("matrix size mismatch");
    double herm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r; c < dim; ++c) {
            herm = std::max(herm, std::abs(a[r * dim + c] - std::conj(a[c * dim + r])));
        }
    }
    if (herm > 1e-8) throw std::invalid_argument("matrix is not Hermitian");

    std::vector<cplx> v;
    if (vectors) {
        v.assign(dim * dim, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < dim; ++i) v[i * dim + i] = cplx{1.0, 0.0};
    }

    double scale = 0.0;
    for (const auto& e : a) scale += std::norm(e);
    scale = std::sqrt(scale);
    const double tol = 1e-12 * std::max(1.0, scale);

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && offdiag_norm(a, dim) > tol; ++sweep) {
        for (std::size_t p = 0; p < dim; ++p) {
            for (std::size_t q = p + 1; q < dim; ++q) {
                const cplx apq = a[p * dim + q];
                const double m = std::abs(apq);
                if (m <= tol / static_cast<double>(dim * dim)) continue;
                const double phi = std::arg(apq);
                const double app = a[p * dim + p].real();
                const double aqq = a[q * dim + q].real();

                double t;
                if (app == aqq) {
                    t = 1.0;
                } else {
                    const double tau = (app - aqq) / (2.0 * m);
                    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = std::polar(s, phi);    // s e^{i phi}
                const cplx sm = std::polar(s, -phi);   // s e^{-i phi}

                for (std::size_t k = 0; k < dim; ++k) {
                    if (k == p || k == q) continue;
                    const cplx akp = a[k * dim + p];
                    const cplx akq = a[k * dim + q];
                    a[k * dim + p] = c * akp + sm * akq;
                    a[k * dim + q] = -sp * akp + c * akq;
                    a[p * dim + k] = std::conj(a[k * dim + p]);
                    a[q * dim + k] = std::conj(a[k * dim + q]);
                }
                const double appn = c * c * app + s * s * aqq + 2.0 * c * s * m;
                const double aqqn = s * s * app + c * c * aqq - 2.0 * c * s * m;
                a[p * dim + p] = cplx{appn, 0.0};
                a[q * dim + q] = cplx{aqqn, 0.0};
                a[p * dim + q] = cplx{0.0, 0.0};
                a[q * dim + p] = cplx{0.0, 0.0};

                if (vectors) {
                    for (std::size_t k = 0; k < dim; ++k) {
                        const cplx vkp = v[k * dim + p];
                        const cplx vkq = v[k * dim + q];
                        v[k * dim + p] = c * vkp + sm * vkq;
                        v[k * dim + q] = -sp * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<double> eig(dim);
    for (std::size_t i = 0; i < dim; ++i) eig[i] = a[i * dim + i].real();

    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return eig[x] < eig[y]; });

    std::vector<double> sorted(dim);
    for (std::size_t i = 0; i < dim; ++i) sorted[i] = eig[order[i]];
    if (vectors) {
        vectors->assign(dim * dim, cplx{0.0, 0.0});
        for (std::size_t col = 0; col < dim; ++col) {
            for (std::size_t row = 0; row < dim; ++row) {
                (*vectors)[row * dim + col] = v[row * dim + order[col]];
            }
        }
    }
    return sorted;
}

double fidelity_pure(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    return std::norm(a.inner(b));
}

double trace_distance_pure(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    const cplx c = a.inner(b);
    const cplx phase = (std::abs(c) > 0.0) ? std::conj(c) / std::abs(c) : cplx{1.0, 0.0};
    double g = 0.0;  // || a - e^{-i arg c} b ||^2 = 2 - 2|c|
    for (std::size_t i = 0; i < a.dim(); ++i) g += std::norm(a[i] - phase * b[i]);
    return std::sqrt(std::max(0.0, g * (1.0 - 0.25 * g)));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    DensityMatrix d = a - b;
    if (d.hermiticity_error() > 1e-8) throw std::invalid_argument("difference is not Hermitian");
    // Symmetrize to keep Jacobi happy about rounding.
    const std::size_t dim = d.dim();
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r; c < dim; ++c) {
            const cplx sym = 0.5 * (d.at(r, c) + std::conj(d.at(c, r)));
            d.at(r, c) = sym;
            d.at(c, r) = std::conj(sym);
        }
    }
    const std::vector<double> eig = jacobi_eigh(d.data(), dim);
    double sum = 0.0;
    for (double e : eig) sum += std::abs(e);
    return 0.5 * sum;
}

}  // namespace qecco
