// oracle.hpp — ground-truth engine: exact one-period propagation, the
// effective Hamiltonian from the principal logarithm of the monodromy
// operator, and stroboscopic observables.
#pragma once

#include "floquetflow/expansion.hpp"
#include "floquetflow/floquet.hpp"
#include "floquetflow/fock.hpp"

#include <optional>
#include <vector>

namespace floquetflow {

enum class Scheme { MidpointExponential, CommutatorFreeMagnus4 };

struct PropagatorResult {
    Eigen::MatrixXcd u_period;  // one-period propagator
    long steps = 0;             // steps of the accepted (finest) pass
    Scheme scheme = Scheme::MidpointExponential;
    double unitarity = 0.0;         // ‖U†U − 1‖_F
    double doubling_residual = 0.0; // ‖U(s) − U(2s)‖_F at acceptance
};

// Product of per-step unitaries over one period, with step doubling until
// ‖U(s) − U(2s)‖_F <= tol (Richardson-style acceptance; the finer result is
// returned). Throws on non-convergence within max_steps.
//   midpoint:   exp(−i h H(t + h/2)) per step, second order
//   cf-Magnus4: two Gauss-point exponentials per step, fourth order
PropagatorResult propagate_period(const Sampler& sampler, double period, long initial_steps,
                                  Scheme scheme, double tol = 1e-10,
                                  long max_steps = (1L << 22));

struct MonodromyEffective {
    Eigen::MatrixXcd h_eff;         // Hermitian, from the principal branch
    Eigen::VectorXd quasienergies;  // eigenphase/T folded to (−ω/2, ω/2]
    Eigen::MatrixXcd eigenvectors;  // orthonormal columns
    bool branch_cut_flag = false;   // an eigenphase within 1e−6 of ±π
};

// Diagonalize U(T) = V diag(e^{−iθ_k}) V†, θ_k in (−π, π], and set
// H_eff = V diag(θ_k/T) V†. Requires unitarity defect <= 1e−9.
MonodromyEffective effective_from_monodromy(const PropagatorResult& result, double period);

struct SpectralReport {
    double max_abs = 0.0;   // max over matched levels of circular |Δε|
    double mean_abs = 0.0;
    std::vector<std::pair<int, int>> matches; // (index in A, index in B)
    double max_principal_angle = 0.0; // worst subspace angle over B-clusters
    bool branch_cut_flag = false;
};

// Fold both spectra into (−ω/2, ω/2], match levels by maximal eigenvector
// overlap (greedy), report circular quasi-energy distances; clustered
// monodromy levels are additionally compared by subspace principal angles.
SpectralReport compare_effective(const EffectiveHamiltonian& a, const MonodromyEffective& b,
                                 double omega, double cluster_tol_rel = 1e-6);

// ε folded into (−ω/2, ω/2]
double fold_quasienergy(double eps, double omega);

struct StroboscopicSeries {
    std::vector<double> return_probability;        // |<ψ0|ψ(nT)>|², n = 0…n_periods
    std::vector<Eigen::VectorXd> site_populations; // per period, if a basis is given
    std::vector<double> position_variance;        // per-particle, if a basis is given
};

StroboscopicSeries stroboscopic_evolve(const Eigen::MatrixXcd& u_period,
                                       const Eigen::VectorXcd& psi0, int n_periods,
                                       const FockBasis* basis = nullptr);

} // namespace floquetflow
