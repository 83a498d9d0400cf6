#include "qecco/losses/operation_loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qecco/simcore/kernels.hpp"
#include "qecco/simcore/linalg.hpp"

namespace qecco {

OperationLossEvaluator::OperationLossEvaluator(const Code& code, const TargetGate& target,
                                               const OperationAnsatz& ansatz, PairSetVariant pairs,
                                               std::span<const double> encoder_params)
    : code_(code), target_(target), ansatz_(ansatz), variant_(pairs) {
    if (target_.two_qubit != ansatz_.is_two_qubit()) {
        throw std::invalid_argument("target and ansatz arity mismatch");
    }
    if (ansatz_.n != code_.n) throw std::invalid_argument("ansatz width does not match the code");
    design_ = target_.two_qubit ? &two_qubit_design() : &single_qubit_design();
    pairs_ = pair_set(*design_, variant_);

    const std::size_t m = design_->size();
    target_gram_.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            target_gram_[i * m + j] = fidelity_pure(design_->states[i], design_->states[j]);
        }
    }

    rows_by_column_.assign(m, {});
    auto need = [&](std::size_t i, std::size_t j) {
        auto& rows = rows_by_column_[j];
        if (std::find(rows.begin(), rows.end(), i) == rows.end()) rows.push_back(i);
    };
    for (const auto& [i, j] : pairs_) need(i, j);
    for (std::size_t i = 0; i < m; ++i) need(i, i);  // worst_diag is always reported

    compile();
    prepare_states(encoder_params);
}

OperationLossEvaluator::OperationLossEvaluator(const LossSpec& spec)
    : OperationLossEvaluator(spec.code, spec.target, spec.ansatz, spec.pairs,
                             spec.encoder_params) {}

void OperationLossEvaluator::prepare_states(std::span<const double> theta) {
    const std::size_t m = design_->size();
    bound_theta_.assign(theta.begin(), theta.end());
    encoded_.clear();
    targets_.clear();
    encoded_.reserve(m);
    targets_.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const StateVector& logical = design_->states[i];
        const StateVector rotated = target_.apply(logical);
        if (target_.two_qubit) {
            encoded_.push_back(encode_two_block(code_, logical, theta));
            targets_.push_back(encode_two_block(code_, rotated, theta));
        } else {
            encoded_.push_back(encode(code_, logical, theta));
            targets_.push_back(encode(code_, rotated, theta));
        }
    }
}

StateVector OperationLossEvaluator::embed_logical(const StateVector& logical) const {
    StateVector physical(ansatz_.register_width());
    physical[0] = cplx{0.0, 0.0};
    if (target_.two_qubit) {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                physical[a | (b << code_.n)] = logical[a + 2 * b];
            }
        }
    } else {
        for (std::size_t b = 0; b < logical.dim(); ++b) physical[b] = logical[b];
    }
    return physical;
}

std::vector<double> OperationLossEvaluator::gradient_encoder(std::span<const double> psi) const {
    if (psi.size() != param_count()) throw std::invalid_argument("parameter count mismatch");
    const std::size_t m = design_->size();
    const std::size_t dim = encoded_.front().dim();
    const double inv_pairs = 1.0 / static_cast<double>(pairs_.size());

    // Both-block encoder acting on the full register with shared parameters.
    Circuit full_encoder = code_.encoder.shifted(0, ansatz_.register_width());
    if (target_.two_qubit) {
        const Circuit block_b = code_.encoder.shifted(code_.n, 2 * code_.n);
        for (const GateOp& g : block_b.gates()) full_encoder.append(g);
    }

    std::vector<std::vector<cplx>> phis(m);
    for (std::size_t j = 0; j < m; ++j) {
        phis[j] = encoded_[j].data();
        apply_all(phis[j], psi);
    }

    std::vector<std::vector<cplx>> chi(m);   // U_L† Σ_i g A t_i, per input column
    std::vector<std::vector<cplx>> w(m);     // Σ_j g conj(A) φ_j, per target row
    for (const auto& [i, j] : pairs_) {
        const auto& t = targets_[i].data();
        const auto& phi = phis[j];
        cplx a{0.0, 0.0};
        for (std::size_t b = 0; b < dim; ++b) a += std::conj(t[b]) * phi[b];
        const double delta = target_gram_[i * m + j] - std::norm(a);
        double g = 0.0;
        if (delta > 0.0) g = -inv_pairs;
        else if (delta < 0.0) g = inv_pairs;
        if (g == 0.0) continue;
        if (chi[j].empty()) chi[j].assign(dim, cplx{0, 0});
        if (w[i].empty()) w[i].assign(dim, cplx{0, 0});
        const cplx ga = g * a;
        const cplx gca = g * std::conj(a);
        for (std::size_t b = 0; b < dim; ++b) {
            chi[j][b] += ga * t[b];
            w[i][b] += gca * phi[b];
        }
    }

    std::vector<double> grad(bound_theta_.size(), 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        if (chi[j].empty()) continue;
        // Back-propagate through the ansatz so the costate meets U_enc directly.
        for (std::size_t mi = macros_.size(); mi-- > 0;) {
            const Macro& mac = macros_[mi];
            if (mac.two_qubit) {
                apply_2q_kernel(chi[j], mat4_dagger(macro_matrix_2q(mac, psi)), mac.qa, mac.qb);
            } else {
                apply_1q_kernel(chi[j], mat2_dagger(macro_matrix_1q(mac, psi)), mac.qa);
            }
        }
        circuit_overlap_gradient(full_encoder, bound_theta_, embed_logical(design_->states[j]),
                                 chi[j], 2.0, grad);
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (w[i].empty()) continue;
        circuit_overlap_gradient(full_encoder, bound_theta_,
                                 embed_logical(target_.apply(design_->states[i])), w[i], 2.0, grad);
    }
    return grad;
}

void OperationLossEvaluator::rebind_encoder(std::span<const double> theta) {
    prepare_states(theta);
}

void OperationLossEvaluator::compile() {
    macros_.clear();
    const std::size_t n = ansatz_.n;
    const std::size_t r = ansatz_.cls.repetitions;
    const bool invert = ansatz_.cls.invert_ctrl;

    switch (ansatz_.cls.variant) {
        case AnsatzVariant::Strict1Q:
        case AnsatzVariant::Transversal1Q:
        case AnsatzVariant::NonTransversal1Q: {
            const bool strict = ansatz_.cls.variant == AnsatzVariant::Strict1Q;
            for (std::size_t q = 0; q < n; ++q) {
                Macro mac;
                mac.two_qubit = false;
                mac.qa = q;
                for (std::size_t rep = 0; rep < r; ++rep) {
                    mac.slots_1q.push_back(static_cast<int>(strict ? 3 * rep : 3 * (rep * n + q)));
                }
                macros_.push_back(std::move(mac));
            }
            if (ansatz_.cls.variant == AnsatzVariant::NonTransversal1Q) {
                const auto viol =
                    place_violations(n, ansatz_.cls.violations, ansatz_.cls.violation_seed);
                for (std::size_t v = 0; v < viol.size(); ++v) {
                    Macro mac;
                    mac.two_qubit = true;
                    mac.qa = viol[v].second;  // target carries the low bit
                    mac.qb = viol[v].first;
                    Factor f;
                    f.kind = Factor::Kind::CU3;
                    f.slot = static_cast<int>(3 * (r * n + v));
                    mac.factors.push_back(f);
                    macros_.push_back(std::move(mac));
                }
            }
            break;
        }
        case AnsatzVariant::StrictCtrl2Q:
        case AnsatzVariant::TransversalCtrl2Q: {
            const bool strict = ansatz_.cls.variant == AnsatzVariant::StrictCtrl2Q;
            for (std::size_t i = 0; i < n; ++i) {
                Macro mac;
                mac.two_qubit = true;
                mac.qa = invert ? i : n + i;  // target
                mac.qb = invert ? n + i : i;  // control
                for (std::size_t rep = 0; rep < r; ++rep) {
                    Factor f;
                    f.kind = Factor::Kind::CU3;
                    f.slot = static_cast<int>(strict ? 3 * rep : 3 * (rep * n + i));
                    mac.factors.push_back(f);
                }
                macros_.push_back(std::move(mac));
            }
            break;
        }
        case AnsatzVariant::WeakTransversal2Q: {
            const Mat4 cz = named_gate_matrix_2q(NamedGate::CZ);
            for (std::size_t i = 0; i < n; ++i) {
                Macro mac;
                mac.two_qubit = true;
                mac.qa = i;       // block A on the low bit
                mac.qb = n + i;   // block B on the high bit
                for (std::size_t rep = 0; rep < r; ++rep) {
                    const int base = static_cast<int>(3 * ((rep * n + i) * 8));
                    for (int block = 3; block >= 0; --block) {
                        Factor fa;
                        fa.kind = Factor::Kind::U3Low;
                        fa.slot = base + 6 * block;
                        mac.factors.push_back(fa);
                        Factor fb;
                        fb.kind = Factor::Kind::U3High;
                        fb.slot = base + 6 * block + 3;
                        mac.factors.push_back(fb);
                        if (block > 0) {
                            Factor fcz;
                            fcz.kind = Factor::Kind::Fixed;
                            fcz.fixed = cz;
                            mac.factors.push_back(fcz);
                        }
                    }
                }
                macros_.push_back(std::move(mac));
            }
            break;
        }
    }
}

Mat4 OperationLossEvaluator::factor_matrix(const Factor& f, std::span<const double> psi) {
    switch (f.kind) {
        case Factor::Kind::Fixed: return f.fixed;
        case Factor::Kind::U3Low:
            return mat4_kron(u3_matrix(psi[f.slot], psi[f.slot + 1], psi[f.slot + 2]),
                             mat2_identity());
        case Factor::Kind::U3High:
            return mat4_kron(mat2_identity(),
                             u3_matrix(psi[f.slot], psi[f.slot + 1], psi[f.slot + 2]));
        case Factor::Kind::CU3:
            return controlled(u3_matrix(psi[f.slot], psi[f.slot + 1], psi[f.slot + 2]));
    }
    return mat4_identity();
}

Mat2 OperationLossEvaluator::macro_matrix_1q(const Macro& m, std::span<const double> psi) const {
    Mat2 acc = mat2_identity();
    for (int slot : m.slots_1q) {
        acc = mat2_mul(u3_matrix(psi[slot], psi[slot + 1], psi[slot + 2]), acc);
    }
    return acc;
}

Mat4 OperationLossEvaluator::macro_matrix_2q(const Macro& m, std::span<const double> psi) const {
    Mat4 acc = mat4_identity();
    for (const Factor& f : m.factors) acc = mat4_mul(factor_matrix(f, psi), acc);
    return acc;
}

void OperationLossEvaluator::apply_all(std::span<cplx> amps, std::span<const double> psi) const {
    for (const Macro& m : macros_) {
        if (m.two_qubit) {
            apply_2q_kernel(amps, macro_matrix_2q(m, psi), m.qa, m.qb);
        } else {
            apply_1q_kernel(amps, macro_matrix_1q(m, psi), m.qa);
        }
    }
}

std::vector<double> OperationLossEvaluator::prediction_column(
    std::size_t j, std::span<const double> psi, const std::vector<std::size_t>& rows) const {
    // Reused per-thread workspace; fresh vectors this size would hit the
    // allocator's mmap path on every call.
    static thread_local std::vector<cplx> amps;
    amps = encoded_[j].data();
    apply_all(amps, psi);
    std::vector<double> out(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& t = targets_[rows[k]].data();
        cplx acc{0.0, 0.0};
        for (std::size_t b = 0; b < amps.size(); ++b) acc += std::conj(t[b]) * amps[b];
        out[k] = std::norm(acc);
    }
    return out;
}

LossValues OperationLossEvaluator::evaluate(std::span<const double> psi) const {
    if (psi.size() != param_count()) throw std::invalid_argument("parameter count mismatch");
    const std::size_t m = design_->size();
    std::vector<double> pred(m * m, -1.0);
    for (std::size_t j = 0; j < m; ++j) {
        const auto& rows = rows_by_column_[j];
        const auto col = prediction_column(j, psi, rows);
        for (std::size_t k = 0; k < rows.size(); ++k) pred[rows[k] * m + j] = col[k];
    }
    LossValues out;
    double sum = 0.0;
    for (const auto& [i, j] : pairs_) {
        const double delta = std::abs(target_gram_[i * m + j] - pred[i * m + j]);
        sum += delta;
        out.worst = std::max(out.worst, delta);
    }
    out.avg = sum / static_cast<double>(pairs_.size());
    for (std::size_t i = 0; i < m; ++i) {
        out.worst_diag = std::max(out.worst_diag, 1.0 - pred[i * m + i]);
    }
    return out;
}

double OperationLossEvaluator::operation_error(std::size_t i, std::size_t j,
                                               std::span<const double> psi) const {
    const std::size_t m = design_->size();
    if (i >= m || j >= m) throw std::out_of_range("design state index");
    const std::vector<std::size_t> rows = {i};
    const auto col = prediction_column(j, psi, rows);
    return target_gram_[i * m + j] - col[0];
}

GramMatrix OperationLossEvaluator::gram_target() const {
    GramMatrix g;
    g.m = design_->size();
    g.target_role = true;
    g.entries = target_gram_;
    return g;
}

GramMatrix OperationLossEvaluator::gram_prediction(std::span<const double> psi) const {
    const std::size_t m = design_->size();
    GramMatrix g;
    g.m = m;
    g.target_role = false;
    g.entries.assign(m * m, 0.0);
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    for (std::size_t j = 0; j < m; ++j) {
        const auto col = prediction_column(j, psi, all);
        for (std::size_t i = 0; i < m; ++i) g.entries[i * m + j] = col[i];
    }
    return g;
}

std::vector<double> OperationLossEvaluator::gradient(std::span<const double> psi) const {
    if (psi.size() != param_count()) throw std::invalid_argument("parameter count mismatch");
    const std::size_t m = design_->size();
    const double inv_pairs = 1.0 / static_cast<double>(pairs_.size());
    std::vector<double> grad(param_count(), 0.0);

    // Loss sensitivities per Gram entry: d(avg)/dF_ij = -sign(G_t - F)/|P|.
    // Entries at the kink (exact match) contribute zero.
    std::vector<std::vector<std::pair<std::size_t, double>>> rows_with_weight(m);

    // Forward predictions for the needed entries. The per-state buffers are
    // thread-local so repeated gradient calls avoid large allocations.
    const std::size_t dim = encoded_.front().dim();
    static thread_local std::vector<cplx> phis;
    phis.resize(m * dim);
    std::vector<std::vector<std::pair<std::size_t, cplx>>> overlaps(m);  // (i, weight * A_ij)
    for (std::size_t j = 0; j < m; ++j) {
        auto phi = std::span<cplx>(phis).subspan(j * dim, dim);
        std::copy(encoded_[j].data().begin(), encoded_[j].data().end(), phi.begin());
        apply_all(phi, psi);
    }
    for (const auto& [i, j] : pairs_) {
        const auto& t = targets_[i].data();
        const auto phi = std::span<const cplx>(phis).subspan(j * dim, dim);
        cplx a{0.0, 0.0};
        for (std::size_t b = 0; b < dim; ++b) a += std::conj(t[b]) * phi[b];
        const double delta = target_gram_[i * m + j] - std::norm(a);
        double weight = 0.0;  // dL/dF = -sign(G_t - F) / |P|
        if (delta > 0.0) weight = -inv_pairs;
        else if (delta < 0.0) weight = inv_pairs;
        overlaps[j].emplace_back(i, weight * a);
    }

    // Precompute per-macro factor matrices and prefix/suffix chains.
    struct Compiled1Q {
        std::vector<Mat2> factors, prefix, suffix;
    };
    struct Compiled2Q {
        std::vector<Mat4> factors, prefix, suffix;
    };
    std::vector<Compiled1Q> c1(macros_.size());
    std::vector<Compiled2Q> c2(macros_.size());
    std::vector<Mat2> inv1(macros_.size());
    std::vector<Mat4> inv2(macros_.size());
    for (std::size_t mi = 0; mi < macros_.size(); ++mi) {
        const Macro& mac = macros_[mi];
        if (!mac.two_qubit) {
            auto& c = c1[mi];
            for (int slot : mac.slots_1q) {
                c.factors.push_back(u3_matrix(psi[slot], psi[slot + 1], psi[slot + 2]));
            }
            const std::size_t k = c.factors.size();
            c.prefix.assign(k + 1, mat2_identity());
            c.suffix.assign(k + 1, mat2_identity());
            for (std::size_t f = 0; f < k; ++f) c.prefix[f + 1] = mat2_mul(c.factors[f], c.prefix[f]);
            for (std::size_t f = k; f-- > 0;) c.suffix[f] = mat2_mul(c.suffix[f + 1], c.factors[f]);
            inv1[mi] = mat2_dagger(c.prefix[k]);
        } else {
            auto& c = c2[mi];
            for (const Factor& f : mac.factors) c.factors.push_back(factor_matrix(f, psi));
            const std::size_t k = c.factors.size();
            c.prefix.assign(k + 1, mat4_identity());
            c.suffix.assign(k + 1, mat4_identity());
            for (std::size_t f = 0; f < k; ++f) c.prefix[f + 1] = mat4_mul(c.factors[f], c.prefix[f]);
            for (std::size_t f = k; f-- > 0;) c.suffix[f] = mat4_mul(c.suffix[f + 1], c.factors[f]);
            inv2[mi] = mat4_dagger(c.prefix[k]);
        }
    }

    static thread_local std::vector<cplx> lam_buf;
    lam_buf.resize(dim);
    for (std::size_t j = 0; j < m; ++j) {
        if (overlaps[j].empty()) continue;
        auto ket = std::span<cplx>(phis).subspan(j * dim, dim);
        auto lam = std::span<cplx>(lam_buf);
        std::fill(lam.begin(), lam.end(), cplx{0.0, 0.0});
        for (const auto& [i, coeff] : overlaps[j]) {
            const auto& t = targets_[i].data();
            for (std::size_t b = 0; b < dim; ++b) lam[b] += coeff * t[b];
        }
        for (std::size_t mi = macros_.size(); mi-- > 0;) {
            // One local transfer matrix per macro serves all of its parameter
            // derivatives: <lam|dM|ket> = Σ dM[r][c] T[r][c].
            const Macro& mac = macros_[mi];
            if (!mac.two_qubit) {
                apply_1q_kernel(ket, inv1[mi], mac.qa);  // state before this macro
                const Mat2 transfer = transfer_1q(lam, mac.qa, ket);
                const auto& c = c1[mi];
                for (std::size_t f = 0; f < c.factors.size(); ++f) {
                    const int slot = mac.slots_1q[f];
                    const auto d = u3_matrix_derivatives(psi[slot], psi[slot + 1], psi[slot + 2]);
                    for (int a = 0; a < 3; ++a) {
                        const Mat2 dm = mat2_mul(c.suffix[f + 1], mat2_mul(d[a], c.prefix[f]));
                        grad[slot + a] += 2.0 * contract(dm, transfer).real();
                    }
                }
                apply_1q_kernel(lam, inv1[mi], mac.qa);
            } else {
                apply_2q_kernel(ket, inv2[mi], mac.qa, mac.qb);
                const Mat4 transfer = transfer_2q(lam, mac.qa, mac.qb, ket);
                const auto& c = c2[mi];
                for (std::size_t f = 0; f < c.factors.size(); ++f) {
                    const Factor& fac = mac.factors[f];
                    if (fac.kind == Factor::Kind::Fixed) continue;
                    const auto d = u3_matrix_derivatives(psi[fac.slot], psi[fac.slot + 1],
                                                         psi[fac.slot + 2]);
                    for (int a = 0; a < 3; ++a) {
                        Mat4 embedded{};
                        if (fac.kind == Factor::Kind::U3Low) {
                            embedded = mat4_kron(d[a], mat2_identity());
                        } else if (fac.kind == Factor::Kind::U3High) {
                            embedded = mat4_kron(mat2_identity(), d[a]);
                        } else {  // CU3: derivative lives in the control-on block
                            embedded[2 * 4 + 2] = d[a][0];
                            embedded[2 * 4 + 3] = d[a][1];
                            embedded[3 * 4 + 2] = d[a][2];
                            embedded[3 * 4 + 3] = d[a][3];
                        }
                        const Mat4 dm = mat4_mul(c.suffix[f + 1], mat4_mul(embedded, c.prefix[f]));
                        grad[fac.slot + a] += 2.0 * contract(dm, transfer).real();
                    }
                }
                apply_2q_kernel(lam, inv2[mi], mac.qa, mac.qb);
            }
        }
    }
    return grad;
}

}  // namespace qecco
