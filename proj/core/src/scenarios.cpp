#include "floquetflow/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace floquetflow {

double bessel_j_signed(int n, double x) {
    if (n >= 0) return bessel_j(n, x);
    const double v = bessel_j(-n, x);
    return (n % 2 == 0) ? v : -v;
}

ShakenLattice make_shaken_lattice(int L, int N, Boundary boundary, const DrivingParams& params,
                                  Frame frame) {
    if (params.omega <= 0.0) throw std::invalid_argument("make_shaken_lattice: omega must be > 0");
    ShakenLattice s;
    s.basis = enumerate_basis(L, N);
    s.ops = build_operators(s.basis, boundary);
    s.params = params;
    s.boundary = boundary;
    s.frame = frame;
    return s;
}

Sampler lab_sampler(const ShakenLattice& s) {
    if (s.frame != Frame::Lab)
        throw std::invalid_argument("lab_sampler: scenario frame is not lab");
    const Eigen::MatrixXcd static_part =
        (s.params.J * s.ops.hop_sym + s.params.U * s.ops.onsite).cast<Complex>();
    const Eigen::MatrixXcd tilt = s.ops.tilt.cast<Complex>();
    const double k = s.params.Kdrive;
    const double omega = s.params.omega;
    return [static_part, tilt, k, omega](double t) {
        return Eigen::MatrixXcd(static_part - k * std::cos(omega * t) * tilt);
    };
}

Sampler rotated_sampler(const ShakenLattice& s) {
    if (s.frame != Frame::Rotated)
        throw std::invalid_argument("rotated_sampler: scenario frame is not rotated");
    const Eigen::MatrixXcd onsite = (s.params.U * s.ops.onsite).cast<Complex>();
    const Eigen::MatrixXcd hop_plus = s.ops.hop_plus.cast<Complex>();
    const double j = s.params.J;
    const double x = s.params.x();
    const double omega = s.params.omega;
    return [onsite, hop_plus, j, x, omega](double t) {
        const double theta = x * std::sin(omega * t);
        const Complex phase(std::cos(theta), std::sin(theta));
        Eigen::MatrixXcd h = j * phase * hop_plus;
        h += h.adjoint().eval();
        h += onsite;
        return h;
    };
}

EffectiveHamiltonian rotated_zero_block(const ShakenLattice& s) {
    return h_eff0(s.params, s.basis, s.boundary);
}

FourierHamiltonian rotated_fourier(const ShakenLattice& s, int n_max) {
    if (s.frame != Frame::Rotated)
        throw std::invalid_argument("rotated_fourier: scenario frame is not rotated");
    if (n_max < 0) throw std::invalid_argument("rotated_fourier: n_max must be >= 0");
    const double x = s.params.x();
    const double j = s.params.J;

    FourierHamiltonian fh;
    fh.omega = s.params.omega;
    fh.dim = s.basis.dim();
    fh.components[0] =
        (j * bessel_j(0, x) * s.ops.hop_sym + s.params.U * s.ops.onsite).cast<Complex>();
    for (int n = -n_max; n <= n_max; ++n) {
        if (n == 0) continue;
        fh.components[n] = (j * bessel_j_signed(n, x) * s.ops.hop_plus +
                            j * bessel_j_signed(n, -x) * s.ops.hop_minus)
                               .cast<Complex>();
    }
    return fh;
}

Sampler two_level_sampler(const DrivenTwoLevel& d) {
    if (d.omega <= 0.0) throw std::invalid_argument("two_level_sampler: omega must be > 0");
    Eigen::MatrixXcd sz(2, 2), sx(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    const Eigen::MatrixXcd diag = 0.5 * d.delta * sz;
    const double amp = d.amp;
    const double omega = d.omega;
    return [diag, sx, amp, omega](double t) {
        return Eigen::MatrixXcd(diag + amp * std::cos(omega * t) * sx);
    };
}

FourierHamiltonian two_level_fourier(const DrivenTwoLevel& d) {
    if (d.omega <= 0.0) throw std::invalid_argument("two_level_fourier: omega must be > 0");
    Eigen::MatrixXcd sz(2, 2), sx(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    FourierHamiltonian fh;
    fh.omega = d.omega;
    fh.dim = 2;
    fh.components[0] = 0.5 * d.delta * sz;
    fh.components[1] = 0.5 * d.amp * sx;
    fh.components[-1] = 0.5 * d.amp * sx;
    return fh;
}

} // namespace floquetflow
