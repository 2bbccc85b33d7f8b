// floquet.hpp — Fourier representation of time-periodic Hamiltonians and
// their embedding as block operators on a truncated extended space.
//
// A T-periodic H(t) = Σ_n H_n e^{inωt} maps to Σ_n H_n ⊗ σ_n + 1 ⊗ ω n̂,
// where σ_m shifts the harmonic index by m. On the truncated space with
// harmonics −M…M (harmonic-major ordering, system index minor), the block
// at block-row r, block-column c is H_{r−c}, plus (r−M)·ω on the diagonal.
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>

namespace floquetflow {

using Sampler = std::function<Eigen::MatrixXcd(double)>;

// Fourier data of a Hermitian T-periodic matrix function.
// Invariants: omega > 0; H_{−n} = H_n† for all stored n.
struct FourierHamiltonian {
    double omega = 1.0;
    Eigen::Index dim = 0;
    std::map<int, Eigen::MatrixXcd> components; // n -> H_n; absent means zero

    int n_max() const;
    Eigen::MatrixXcd component(int n) const; // zero matrix if absent
    // max ‖H_{−n} − H_n†‖_F over stored n
    double pairing_defect() const;
};

// H_n = (1/T) ∫_0^T H(t) e^{−inωt} dt by uniform trapezoidal quadrature
// (spectrally accurate for periodic integrands). points <= 0 selects the
// default max(64, 8 n_max); points must be >= 4 n_max. Each sample is
// required to be Hermitian unless require_hermitian is false (used for
// scalar phase-factor checks).
FourierHamiltonian fourier_decompose(const Sampler& sampler, double omega, int n_max,
                                     int quadrature_points = 0, bool require_hermitian = true);

// Block-Toeplitz storage of the extended-space operator: one matrix per
// harmonic difference d, the 1 ⊗ ω n̂ shift kept separate.
struct FloquetOperator {
    int M = 0;
    double omega = 1.0;
    Eigen::Index dim = 0;
    std::map<int, Eigen::MatrixXcd> blocks; // d -> coupling between m and m+d
    bool has_shift = true;                  // include 1 ⊗ ω n̂ on assembly

    Eigen::Index ext_dim() const { return dim * (2 * static_cast<Eigen::Index>(M) + 1); }
    Eigen::MatrixXcd assemble() const;
};

// Embed Fourier data at harmonic cutoff M (requires M >= n_max of fh).
FloquetOperator build_floquet_operator(const FourierHamiltonian& fh, int M);

// Partition into the decoupled part (d = 0 block + shift) and the
// interaction (all d != 0 blocks). The two reassemble the input exactly.
std::pair<FloquetOperator, FloquetOperator> split(const FloquetOperator& k);

// Block-Toeplitz deviation of an assembled extended-space matrix:
// max over admissible (m, m') of ‖block(m,m') − block(m+1,m'+1)‖_F with all
// four harmonics within the interior |m| <= M − buffer. If shift_omega is
// nonzero, m·shift_omega is removed from diagonal blocks first.
double s_invariance_deviation(const Eigen::MatrixXcd& mat, int M, Eigen::Index dim,
                              int buffer = 0, double shift_omega = 0.0);

struct SInvarianceReport {
    bool ok = false;
    double max_deviation = 0.0;
};

SInvarianceReport verify_s_invariance(const Eigen::MatrixXcd& mat, int M, Eigen::Index dim,
                                      double tol, int buffer = 0, double shift_omega = 0.0);

// Interior-averaged harmonic components of an assembled matrix: for each
// difference d, the mean of blocks with both harmonics within
// |m| <= M − buffer, plus the worst deviation from that mean (a truncation
// diagnostic). Requires buffer < M.
struct HarmonicComponents {
    std::map<int, Eigen::MatrixXcd> components;
    double max_spread = 0.0;
};

HarmonicComponents extract_harmonic_components(const Eigen::MatrixXcd& mat, int M,
                                               Eigen::Index dim, int buffer,
                                               double shift_omega = 0.0);

} // namespace floquetflow
