// flow.hpp — isospectral flow that block-diagonalizes a truncated
// extended-space operator, d𝒦/dl = [η(l), 𝒦(l)], and reconstruction of the
// effective Hamiltonian from the accumulated unitary.
#pragma once

#include "floquetflow/expansion.hpp"
#include "floquetflow/floquet.hpp"

#include <stdexcept>
#include <vector>

namespace floquetflow {

// Generator choices. Both are of the form Σ_n η_n ⊗ σ_n and therefore
// preserve the block-Toeplitz structure that corresponds to a genuine
// periodic time-dependent unitary.
//   Harmonic:  η = [D, K_int] with D = 1 ⊗ ω n̂; elementwise this is
//              η_IJ = ω (m_I − m_J) K_IJ on off-diagonal blocks.
//   Canonical: η = [K_0, K_int] with K_0 the block-diagonal part.
enum class GeneratorKind { Harmonic, Canonical };

struct StepControl {
    double h0 = 0.0;             // initial step; 0 selects one automatically
    double h_max = 0.0;          // hard cap; 0 means no explicit cap
    double rtol = 1e-9;          // error per unit flow length, relative to ‖K‖_F
    double atol = 0.0;           // absolute error floor (same units)
    double uc_resolution = 0.25; // resolve live harmonics: h ≤ this / (d_live·ω)²
};

struct FlowConfig {
    GeneratorKind generator = GeneratorKind::Harmonic;
    double l_max = 0.0;            // 0 selects 50/ω²
    StepControl step;
    double convergence_tol = 1e-8; // target for ‖K_int‖_F / ‖K_0‖_F
    int buffer = 0;                // readout buffer; 0 selects max(2, M/4)
    int drift_stride = 25;         // spectral-drift sampling stride (accepted steps)
    long max_accepted_steps = 400000;
};

struct FlowDiagnosticsRow {
    double l = 0.0;
    double offdiag_rel = 0.0;      // ‖K_int‖_F / ‖K_0‖_F
    double s_deviation = 0.0;      // interior block-Toeplitz deviation
    double spectral_drift = 0.0;   // vs the initial spectrum, when sampled
    bool drift_sampled = false;
};

struct FlowState {
    int M = 0;
    Eigen::Index dim = 0;
    double omega = 1.0;
    FlowConfig config;

    double l = 0.0;
    Eigen::MatrixXcd K;  // assembled extended-space operator at flow time l
    Eigen::MatrixXcd Uc; // accumulated unitary: K(l) = Uc K(0) Uc†
    std::vector<FlowDiagnosticsRow> history;

    // controller state
    double h = 0.0;
    long accepted = 0;
    long rejected = 0;
    Eigen::VectorXd initial_spectrum;
    double initial_k_norm = 0.0;

    double offdiag_rel() const;
};

enum class FlowStatus { Converged, ReachedLMax };

// Non-convergence is a first-class outcome carrying the final state.
struct FlowResult {
    FlowStatus status = FlowStatus::Converged;
    FlowState state;
    double final_offdiag_rel = 0.0;
};

struct UnitarityDefect : std::runtime_error {
    explicit UnitarityDefect(const std::string& what) : std::runtime_error(what) {}
};

// Anti-Hermitian generator for the assembled matrix (antisymmetrized
// numerically, so η† = −η holds exactly).
Eigen::MatrixXcd make_generator(const Eigen::MatrixXcd& k, GeneratorKind kind, int M,
                                Eigen::Index dim, double omega);

FlowState init_flow(const FloquetOperator& op, const FlowConfig& config);

// One accepted step of at most h_try (rejected attempts halve the step and
// retry; they never abort). Advances K by the embedded 5(4) pair with the
// harmonic-decay rates integrated exactly, and Uc by the exact exponential
// of the trapezoidal generator average.
FlowState flow_step(const FlowState& state, double h_try);

// Integrate until ‖K_int‖_F ≤ convergence_tol·‖K_0‖_F or l reaches l_max.
FlowResult run_flow(const FloquetOperator& op, const FlowConfig& config);

// H_c = interior-averaged d = 0 block minus the ω·m shift; U_c(0) = sum of
// interior-averaged harmonic components of Uc; result U_c(0)† H_c U_c(0),
// re-Hermitized. Throws UnitarityDefect if ‖U_c(0)†U_c(0) − 1‖_F > 1e−6.
EffectiveHamiltonian extract_effective(const FlowState& state, int buffer);

} // namespace floquetflow
