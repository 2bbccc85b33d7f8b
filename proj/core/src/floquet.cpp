#include "floquetflow/floquet.hpp"

#include "floquetflow/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace floquetflow {

int FourierHamiltonian::n_max() const {
    int n = 0;
    for (const auto& [k, mat] : components) n = std::max(n, std::abs(k));
    return n;
}

Eigen::MatrixXcd FourierHamiltonian::component(int n) const {
    auto it = components.find(n);
    if (it != components.end()) return it->second;
    return Eigen::MatrixXcd::Zero(dim, dim);
}

double FourierHamiltonian::pairing_defect() const {
    double worst = 0.0;
    for (const auto& [n, mat] : components)
        worst = std::max(worst, (component(-n) - Eigen::MatrixXcd(mat.adjoint())).norm());
    return worst;
}

FourierHamiltonian fourier_decompose(const Sampler& sampler, double omega, int n_max,
                                     int quadrature_points, bool require_hermitian) {
    if (omega <= 0.0) throw std::invalid_argument("fourier_decompose: omega must be > 0");
    if (n_max < 0) throw std::invalid_argument("fourier_decompose: n_max must be >= 0");
    int points = quadrature_points;
    if (points <= 0) points = std::max(64, 8 * n_max);
    if (points < 4 * n_max)
        throw std::invalid_argument("fourier_decompose: need at least 4*n_max quadrature points");

    const double period = 2.0 * std::numbers::pi / omega;
    std::vector<Eigen::MatrixXcd> samples;
    samples.reserve(points);
    for (int k = 0; k < points; ++k) {
        Eigen::MatrixXcd h = sampler(period * k / points);
        if (h.rows() != h.cols()) throw std::invalid_argument("fourier_decompose: sample not square");
        if (require_hermitian) {
            const double scale = std::max(1.0, h.norm());
            if (hermiticity_defect(h) > 1e-10 * scale)
                throw std::invalid_argument("fourier_decompose: non-Hermitian sample");
        }
        samples.push_back(std::move(h));
    }

    FourierHamiltonian fh;
    fh.omega = omega;
    fh.dim = samples.front().rows();
    for (int n = -n_max; n <= n_max; ++n) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(fh.dim, fh.dim);
        for (int k = 0; k < points; ++k) {
            const double phase = -2.0 * std::numbers::pi * n * k / points;
            acc += samples[k] * Complex(std::cos(phase), std::sin(phase));
        }
        fh.components[n] = acc / static_cast<double>(points);
    }
    return fh;
}

Eigen::MatrixXcd FloquetOperator::assemble() const {
    const Eigen::Index n = ext_dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    const int nb = 2 * M + 1;
    for (int r = 0; r < nb; ++r) {
        for (int c = 0; c < nb; ++c) {
            auto it = blocks.find(r - c);
            if (it != blocks.end()) out.block(r * dim, c * dim, dim, dim) = it->second;
        }
        if (has_shift) {
            const double shift = (r - M) * omega;
            for (Eigen::Index i = 0; i < dim; ++i) out(r * dim + i, r * dim + i) += shift;
        }
    }
    return out;
}

FloquetOperator build_floquet_operator(const FourierHamiltonian& fh, int M) {
    if (fh.omega <= 0.0) throw std::invalid_argument("build_floquet_operator: omega must be > 0");
    if (M < fh.n_max())
        throw std::invalid_argument("build_floquet_operator: M must be >= n_max of the Fourier data");
    FloquetOperator k;
    k.M = M;
    k.omega = fh.omega;
    k.dim = fh.dim;
    k.has_shift = true;
    for (const auto& [n, mat] : fh.components) k.blocks[n] = mat;
    return k;
}

std::pair<FloquetOperator, FloquetOperator> split(const FloquetOperator& k) {
    FloquetOperator k0;
    k0.M = k.M;
    k0.omega = k.omega;
    k0.dim = k.dim;
    k0.has_shift = k.has_shift;
    FloquetOperator kint;
    kint.M = k.M;
    kint.omega = k.omega;
    kint.dim = k.dim;
    kint.has_shift = false;
    for (const auto& [d, mat] : k.blocks) {
        if (d == 0)
            k0.blocks[d] = mat;
        else
            kint.blocks[d] = mat;
    }
    return {k0, kint};
}

namespace {

void check_block_shape(const Eigen::MatrixXcd& mat, int M, Eigen::Index dim) {
    const Eigen::Index n = dim * (2 * static_cast<Eigen::Index>(M) + 1);
    if (mat.rows() != n || mat.cols() != n)
        throw std::invalid_argument("extended-space matrix has wrong shape for (M, dim)");
}

} // namespace

double s_invariance_deviation(const Eigen::MatrixXcd& mat, int M, Eigen::Index dim,
                              int buffer, double shift_omega) {
    check_block_shape(mat, M, dim);
    if (buffer < 0 || buffer >= M) throw std::invalid_argument("s_invariance_deviation: need 0 <= buffer < M");
    const int lo = buffer;          // block index of harmonic −(M−buffer)
    const int hi = 2 * M - buffer;  // block index of harmonic +(M−buffer)
    auto block_of = [&](int r, int c) {
        Eigen::MatrixXcd b = mat.block(r * dim, c * dim, dim, dim);
        if (r == c && shift_omega != 0.0)
            b -= (r - M) * shift_omega * Eigen::MatrixXcd::Identity(dim, dim);
        return b;
    };
    double worst = 0.0;
    for (int r = lo; r + 1 <= hi; ++r)
        for (int c = lo; c + 1 <= hi; ++c)
            worst = std::max(worst, (block_of(r, c) - block_of(r + 1, c + 1)).norm());
    return worst;
}

SInvarianceReport verify_s_invariance(const Eigen::MatrixXcd& mat, int M, Eigen::Index dim,
                                      double tol, int buffer, double shift_omega) {
    SInvarianceReport rep;
    rep.max_deviation = s_invariance_deviation(mat, M, dim, buffer, shift_omega);
    rep.ok = rep.max_deviation <= tol;
    return rep;
}

HarmonicComponents extract_harmonic_components(const Eigen::MatrixXcd& mat, int M,
                                               Eigen::Index dim, int buffer,
                                               double shift_omega) {
    check_block_shape(mat, M, dim);
    if (buffer < 0 || buffer >= M)
        throw std::invalid_argument("extract_harmonic_components: need 0 <= buffer < M");
    const int lo = buffer;
    const int hi = 2 * M - buffer;

    HarmonicComponents out;
    const int span = hi - lo;
    for (int d = -span; d <= span; ++d) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
        int count = 0;
        for (int c = lo; c <= hi; ++c) {
            const int r = c + d;
            if (r < lo || r > hi) continue;
            acc += mat.block(r * dim, c * dim, dim, dim);
            ++count;
        }
        if (count == 0) continue;
        acc /= static_cast<double>(count);
        if (d == 0 && shift_omega != 0.0) {
            // remove the mean of the m·ω ladder (zero on a symmetric range)
            double mean_m = 0.0;
            int cnt = 0;
            for (int c = lo; c <= hi; ++c) { mean_m += (c - M); ++cnt; }
            mean_m /= cnt;
            acc -= mean_m * shift_omega * Eigen::MatrixXcd::Identity(dim, dim);
        }
        out.components[d] = acc;
        for (int c = lo; c <= hi; ++c) {
            const int r = c + d;
            if (r < lo || r > hi) continue;
            Eigen::MatrixXcd b = mat.block(r * dim, c * dim, dim, dim);
            if (d == 0 && shift_omega != 0.0)
                b -= (r - M) * shift_omega * Eigen::MatrixXcd::Identity(dim, dim);
            out.max_spread = std::max(out.max_spread, (b - acc).norm());
        }
    }
    return out;
}

} // namespace floquetflow
