#include "floquetflow/flow.hpp"

#include "floquetflow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace floquetflow {

namespace {

// Dormand–Prince 5(4) tableau
constexpr int kStages = 7;
constexpr double kC[kStages] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[kStages][kStages] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[kStages] = {35.0 / 384,     0.0,        500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[kStages] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct BlockView {
    int M;
    Eigen::Index dim;
    double omega;
    int nb() const { return 2 * M + 1; }
};

// multiply block (r, c) by exp(−((r−c)ω)² τ); the exactly integrated part
// of the flow linearization
void damp_in_place(Eigen::MatrixXcd& x, const BlockView& v, double tau) {
    if (tau == 0.0) return;
    std::vector<double> factor(2 * v.M + 1, 1.0);
    for (int d = 1; d <= 2 * v.M; ++d) {
        const double rate = static_cast<double>(d) * v.omega;
        factor[d] = std::exp(-rate * rate * tau);
    }
    for (int r = 0; r < v.nb(); ++r)
        for (int c = 0; c < v.nb(); ++c) {
            const int d = std::abs(r - c);
            if (d == 0) continue;
            x.block(r * v.dim, c * v.dim, v.dim, v.dim) *= factor[d];
        }
}

Eigen::MatrixXcd damped(const Eigen::MatrixXcd& x, const BlockView& v, double tau) {
    Eigen::MatrixXcd out = x;
    damp_in_place(out, v, tau);
    return out;
}

Eigen::MatrixXcd block_diag_part(const Eigen::MatrixXcd& k, const BlockView& v) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k.rows(), k.cols());
    for (int r = 0; r < v.nb(); ++r)
        out.block(r * v.dim, r * v.dim, v.dim, v.dim) = k.block(r * v.dim, r * v.dim, v.dim, v.dim);
    return out;
}

double offdiag_norm(const Eigen::MatrixXcd& k, const BlockView& v) {
    double sq = 0.0;
    for (int r = 0; r < v.nb(); ++r)
        for (int c = 0; c < v.nb(); ++c) {
            if (r == c) continue;
            sq += k.block(r * v.dim, c * v.dim, v.dim, v.dim).squaredNorm();
        }
    return std::sqrt(sq);
}

double diag_norm(const Eigen::MatrixXcd& k, const BlockView& v) {
    double sq = 0.0;
    for (int r = 0; r < v.nb(); ++r) sq += k.block(r * v.dim, r * v.dim, v.dim, v.dim).squaredNorm();
    return std::sqrt(sq);
}

// derivative with the exactly-integrated decay removed:
// R(K) = [η, K] + Λ∘K_int, Λ_IJ = ((m_I − m_J) ω)²
Eigen::MatrixXcd residual_derivative(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& eta,
                                     const BlockView& v) {
    Eigen::MatrixXcd r = eta * k - k * eta;
    for (int rb = 0; rb < v.nb(); ++rb)
        for (int cb = 0; cb < v.nb(); ++cb) {
            if (rb == cb) continue;
            const double rate = static_cast<double>(rb - cb) * v.omega;
            r.block(rb * v.dim, cb * v.dim, v.dim, v.dim) +=
                (rate * rate) * k.block(rb * v.dim, cb * v.dim, v.dim, v.dim);
        }
    return r;
}

// largest harmonic difference whose block content is above the floor
int max_live_harmonic(const Eigen::MatrixXcd& k, const BlockView& v, double floor) {
    int live = 0;
    for (int d = 1; d <= 2 * v.M; ++d) {
        double worst = 0.0;
        for (int c = 0; c + d < v.nb(); ++c) {
            worst = std::max(worst, k.block((c + d) * v.dim, c * v.dim, v.dim, v.dim).norm());
            worst = std::max(worst, k.block(c * v.dim, (c + d) * v.dim, v.dim, v.dim).norm());
        }
        if (worst > floor) live = d;
    }
    return live;
}

double step_cap(const FlowState& st, const BlockView& v) {
    const double floor = 0.01 * st.config.convergence_tol * st.initial_k_norm;
    const int live = max_live_harmonic(st.K, v, floor);
    if (live == 0) return std::numeric_limits<double>::infinity();
    const double rate = static_cast<double>(live) * st.omega;
    return st.config.step.uc_resolution / (rate * rate);
}

double resolved_l_max(const FlowConfig& config, double omega) {
    return (config.l_max > 0.0) ? config.l_max : 50.0 / (omega * omega);
}

int resolved_buffer(int requested, int M) {
    if (requested > 0) return std::min(requested, std::max(M - 1, 0));
    return std::min(std::max(2, M / 4), std::max(M - 1, 0));
}

struct StepOutcome {
    double h_used = 0.0;
    double h_next = 0.0;
    double error = 0.0;
};

// one accepted Dormand–Prince step in the integrating-factor variables;
// rejected attempts halve h and retry
StepOutcome advance(FlowState& st, double h_try, const BlockView& v) {
    const double knorm = st.K.norm();
    const double tol_rate = st.config.step.atol + st.config.step.rtol * knorm;

    Eigen::MatrixXcd k_stage[kStages];
    Eigen::MatrixXcd r_stage[kStages];
    Eigen::MatrixXcd eta_start =
        make_generator(st.K, st.config.generator, st.M, st.dim, st.omega);
    r_stage[0] = residual_derivative(st.K, eta_start, v);

    double h = h_try;
    while (true) {
        for (int i = 1; i < kStages; ++i) {
            Eigen::MatrixXcd acc = damped(st.K, v, kC[i] * h);
            for (int j = 0; j < i; ++j) {
                if (kA[i][j] == 0.0) continue;
                acc.noalias() += (h * kA[i][j]) * damped(r_stage[j], v, (kC[i] - kC[j]) * h);
            }
            k_stage[i] = std::move(acc);
            const Eigen::MatrixXcd eta =
                make_generator(k_stage[i], st.config.generator, st.M, st.dim, st.omega);
            r_stage[i] = residual_derivative(k_stage[i], eta, v);
        }

        Eigen::MatrixXcd err_mat = Eigen::MatrixXcd::Zero(st.K.rows(), st.K.cols());
        for (int j = 0; j < kStages; ++j) {
            const double w = kB5[j] - kB4[j];
            if (w == 0.0) continue;
            err_mat.noalias() += (h * w) * damped(r_stage[j], v, (1.0 - kC[j]) * h);
        }
        const double err = err_mat.norm();
        const double tol_step = h * tol_rate;

        if (err <= tol_step || h <= 1e-300) {
            // stage 7 sits at c = 1 with the 5th-order weights: it is the new K
            st.K = k_stage[kStages - 1];
            const Eigen::MatrixXcd eta_end =
                make_generator(st.K, st.config.generator, st.M, st.dim, st.omega);
            const Eigen::MatrixXcd step_gen = 0.5 * h * (eta_start + eta_end);
            st.Uc = matrix_exp(step_gen) * st.Uc;
            st.l += h;
            st.accepted += 1;

            StepOutcome out;
            out.h_used = h;
            out.error = err;
            const double grow =
                (err > 0.0) ? std::clamp(0.9 * std::pow(tol_step / err, 0.2), 0.2, 5.0) : 5.0;
            out.h_next = h * grow;
            return out;
        }
        st.rejected += 1;
        h *= 0.5;
    }
}

void record_row(FlowState& st, const BlockView& v, bool sample_drift) {
    FlowDiagnosticsRow row;
    row.l = st.l;
    const double dn = diag_norm(st.K, v);
    row.offdiag_rel = (dn > 0.0) ? offdiag_norm(st.K, v) / dn : 0.0;
    const int buf = resolved_buffer(st.config.buffer, st.M);
    row.s_deviation =
        (st.M >= 1) ? s_invariance_deviation(st.K, st.M, st.dim, std::min(buf, st.M - 1), st.omega)
                    : 0.0;
    if (sample_drift) {
        const Eigen::VectorXd eigs = hermitian_eigenvalues(st.K);
        row.spectral_drift = (eigs - st.initial_spectrum).cwiseAbs().maxCoeff();
        row.drift_sampled = true;
    } else if (!st.history.empty()) {
        row.spectral_drift = st.history.back().spectral_drift;
    }
    st.history.push_back(row);
}

} // namespace

double FlowState::offdiag_rel() const {
    const BlockView v{M, dim, omega};
    const double dn = diag_norm(K, v);
    return (dn > 0.0) ? offdiag_norm(K, v) / dn : 0.0;
}

Eigen::MatrixXcd make_generator(const Eigen::MatrixXcd& k, GeneratorKind kind, int M,
                                Eigen::Index dim, double omega) {
    const Eigen::Index n = dim * (2 * static_cast<Eigen::Index>(M) + 1);
    if (k.rows() != n || k.cols() != n)
        throw std::invalid_argument("make_generator: matrix shape does not match (M, dim)");
    const BlockView v{M, dim, omega};

    Eigen::MatrixXcd eta;
    if (kind == GeneratorKind::Harmonic) {
        eta = Eigen::MatrixXcd::Zero(n, n);
        for (int r = 0; r < v.nb(); ++r)
            for (int c = 0; c < v.nb(); ++c) {
                if (r == c) continue;
                eta.block(r * dim, c * dim, dim, dim) =
                    (static_cast<double>(r - c) * omega) * k.block(r * dim, c * dim, dim, dim);
            }
    } else {
        const Eigen::MatrixXcd k0 = block_diag_part(k, v);
        const Eigen::MatrixXcd kint = k - k0;
        eta = k0 * kint - kint * k0;
    }
    return 0.5 * (eta - eta.adjoint().eval());
}

FlowState init_flow(const FloquetOperator& op, const FlowConfig& config) {
    FlowState st;
    st.M = op.M;
    st.dim = op.dim;
    st.omega = op.omega;
    st.config = config;
    st.K = op.assemble();
    st.Uc = Eigen::MatrixXcd::Identity(st.K.rows(), st.K.cols());
    st.initial_spectrum = hermitian_eigenvalues(st.K);
    st.initial_k_norm = st.K.norm();

    const BlockView v{st.M, st.dim, st.omega};
    double h0 = config.step.h0;
    if (h0 <= 0.0) {
        const double cap = step_cap(st, v);
        const double lmax = resolved_l_max(config, st.omega);
        h0 = std::isfinite(cap) ? 0.5 * cap : 0.1 * lmax;
    }
    if (config.step.h_max > 0.0) h0 = std::min(h0, config.step.h_max);
    st.h = h0;
    return st;
}

FlowState flow_step(const FlowState& state, double h_try) {
    FlowState st = state;
    const BlockView v{st.M, st.dim, st.omega};
    advance(st, h_try, v);
    record_row(st, v, false);
    return st;
}

FlowResult run_flow(const FloquetOperator& op, const FlowConfig& config) {
    FlowState st = init_flow(op, config);
    const BlockView v{st.M, st.dim, st.omega};
    const double l_max = resolved_l_max(config, st.omega);

    record_row(st, v, true); // the l = 0 row, drift 0 by construction

    while (st.history.back().offdiag_rel > config.convergence_tol && st.l < l_max &&
           st.accepted < config.max_accepted_steps) {
        double h_try = std::min(st.h, l_max - st.l);
        h_try = std::min(h_try, step_cap(st, v));
        if (config.step.h_max > 0.0) h_try = std::min(h_try, config.step.h_max);

        const StepOutcome out = advance(st, h_try, v);
        st.h = out.h_next;

        const bool sample = (st.accepted % std::max(1, config.drift_stride) == 0);
        record_row(st, v, sample);
    }

    if (!st.history.back().drift_sampled) {
        st.history.pop_back();
        record_row(st, v, true);
    }

    FlowResult res;
    res.state = std::move(st);
    res.final_offdiag_rel = res.state.history.back().offdiag_rel;
    res.status = (res.final_offdiag_rel <= config.convergence_tol) ? FlowStatus::Converged
                                                                   : FlowStatus::ReachedLMax;
    return res;
}

EffectiveHamiltonian extract_effective(const FlowState& state, int buffer) {
    const int buf = resolved_buffer(buffer, state.M);
    const HarmonicComponents kc =
        extract_harmonic_components(state.K, state.M, state.dim, buf, state.omega);
    const HarmonicComponents uc = extract_harmonic_components(state.Uc, state.M, state.dim, buf);

    Eigen::MatrixXcd u0 = Eigen::MatrixXcd::Zero(state.dim, state.dim);
    for (const auto& [d, mat] : uc.components) u0 += mat;
    const double defect = unitarity_defect(u0);
    if (defect > 1e-6)
        throw UnitarityDefect("extract_effective: U_c(0) unitarity defect " +
                              std::to_string(defect) + " exceeds 1e-6");

    const Eigen::MatrixXcd h_c = kc.components.at(0);
    double herm_defect = 0.0;
    EffectiveHamiltonian eff;
    eff.matrix = hermitize(u0.adjoint() * h_c * u0, &herm_defect);
    eff.method = Method::Flow;
    eff.meta = {{"omega", state.omega},
                {"M", static_cast<double>(state.M)},
                {"buffer", static_cast<double>(buf)},
                {"l_end", state.l},
                {"offdiag_rel", state.history.empty() ? 0.0 : state.history.back().offdiag_rel},
                {"unitarity_defect", defect},
                {"block_spread_K", kc.max_spread},
                {"block_spread_U", uc.max_spread},
                {"hermitize_defect", herm_defect},
                {"accepted_steps", static_cast<double>(state.accepted)},
                {"rejected_steps", static_cast<double>(state.rejected)}};
    return eff;
}

} // namespace floquetflow
