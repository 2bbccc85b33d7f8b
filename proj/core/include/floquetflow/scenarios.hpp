// scenarios.hpp — model definitions binding the lattice operators to the
// two driven systems used throughout: a shaken Bose-Hubbard chain and a
// cosine-driven two-level system.
#pragma once

#include "floquetflow/expansion.hpp"
#include "floquetflow/floquet.hpp"
#include "floquetflow/fock.hpp"

namespace floquetflow {

enum class Frame { Lab, Rotated };

// Shaken Bose-Hubbard chain.
//
// Lab frame:      H(t) = J·hop_sym + U·onsite − Kdrive·cos(ωt)·tilt
// Rotated frame:  H̃(t) = J(e^{iθ(t)}·hop_plus + e^{−iθ(t)}·hop_minus) + U·onsite
// with θ(t) = x·sin(ωt), x = Kdrive/ω, related by the periodic unitary
// exp(−i θ(t)·tilt), which is the identity at t = 0 and t = T.
//
// Sign convention: with ascending site labels in tilt = Σ_i i·n_i, the
// drive enters with a minus sign so that the rotated frame attaches the
// Fourier weight J_n(+x) to the left-to-right hop Σ_i c_i†c_{i+1}.
// Flipping the drive sign is the same model with sites relabeled
// right-to-left; all spectra and stroboscopic observables are unchanged.
struct ShakenLattice {
    FockBasis basis;
    LatticeOperatorSet ops;
    DrivingParams params;
    Boundary boundary = Boundary::Periodic;
    Frame frame = Frame::Lab;
};

ShakenLattice make_shaken_lattice(int L, int N, Boundary boundary, const DrivingParams& params,
                                  Frame frame);

// Time-dependent matrix function of the lab-frame Hamiltonian (frame must be Lab).
Sampler lab_sampler(const ShakenLattice& s);

// Rotated-frame sampler with the drive eliminated (frame must be Rotated).
// Both frames share the one-period propagator.
Sampler rotated_sampler(const ShakenLattice& s);

// Analytic Fourier components of the rotated frame:
//   n = 0:  J·J0(x)·hop_sym + U·onsite
//   n ≠ 0:  J·J_n(x)·hop_plus + J·J_n(−x)·hop_minus
EffectiveHamiltonian rotated_zero_block(const ShakenLattice& s); // convenience, n = 0 only
FourierHamiltonian rotated_fourier(const ShakenLattice& s, int n_max);

// Driven two-level system: (delta/2)·σ_z + amp·cos(ωt)·σ_x.
struct DrivenTwoLevel {
    double delta = 1.0;
    double amp = 0.0;
    double omega = 1.0;
};

Sampler two_level_sampler(const DrivenTwoLevel& d);
FourierHamiltonian two_level_fourier(const DrivenTwoLevel& d);

// J_n for signed order via J_{−n}(x) = (−1)^n J_n(x).
double bessel_j_signed(int n, double x);

} // namespace floquetflow
