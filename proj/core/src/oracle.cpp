#include "floquetflow/oracle.hpp"

#include "floquetflow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace floquetflow {

namespace {

Eigen::MatrixXcd propagate_once(const Sampler& sampler, double period, long steps, Scheme scheme) {
    const double h = period / static_cast<double>(steps);
    Eigen::Index dim = sampler(0.0).rows();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);

    if (scheme == Scheme::MidpointExponential) {
        for (long k = 0; k < steps; ++k) {
            const double t_mid = (static_cast<double>(k) + 0.5) * h;
            u = unitary_exp(sampler(t_mid), h) * u;
        }
        return u;
    }

    // commutator-free fourth order: Gauss nodes c± = 1/2 ± √3/6 and weights
    // x1 = 1/4 + √3/6, x2 = 1/4 − √3/6; the earlier node carries the larger
    // weight in the first (right) factor
    const double s3 = std::sqrt(3.0) / 6.0;
    const double c1 = 0.5 - s3, c2 = 0.5 + s3;
    const double x1 = 0.25 + s3, x2 = 0.25 - s3;
    for (long k = 0; k < steps; ++k) {
        const double t0 = static_cast<double>(k) * h;
        const Eigen::MatrixXcd h1 = sampler(t0 + c1 * h);
        const Eigen::MatrixXcd h2 = sampler(t0 + c2 * h);
        const Eigen::MatrixXcd right = unitary_exp(x1 * h1 + x2 * h2, h);
        const Eigen::MatrixXcd left = unitary_exp(x2 * h1 + x1 * h2, h);
        u = left * (right * u);
    }
    return u;
}

} // namespace

PropagatorResult propagate_period(const Sampler& sampler, double period, long initial_steps,
                                  Scheme scheme, double tol, long max_steps) {
    if (period <= 0.0) throw std::invalid_argument("propagate_period: period must be > 0");
    if (initial_steps < 64) throw std::invalid_argument("propagate_period: need at least 64 steps");

    long steps = initial_steps;
    Eigen::MatrixXcd u_coarse = propagate_once(sampler, period, steps, scheme);
    while (true) {
        if (2 * steps > max_steps)
            throw std::runtime_error("propagate_period: no convergence within the step cap");
        const Eigen::MatrixXcd u_fine = propagate_once(sampler, period, 2 * steps, scheme);
        const double residual = (u_fine - u_coarse).norm();
        if (residual <= tol) {
            PropagatorResult res;
            res.u_period = u_fine;
            res.steps = 2 * steps;
            res.scheme = scheme;
            res.unitarity = unitarity_defect(u_fine);
            res.doubling_residual = residual;
            return res;
        }
        steps *= 2;
        u_coarse = u_fine;
    }
}

MonodromyEffective effective_from_monodromy(const PropagatorResult& result, double period) {
    if (period <= 0.0) throw std::invalid_argument("effective_from_monodromy: period must be > 0");
    if (result.unitarity > 1e-9)
        throw std::invalid_argument("effective_from_monodromy: propagator unitarity defect > 1e-9");

    // Schur of a (numerically) normal matrix: orthonormal Q, near-diagonal T
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(result.u_period);
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("effective_from_monodromy: Schur decomposition failed");
    const Eigen::MatrixXcd& q = schur.matrixU();
    const Eigen::Index dim = result.u_period.rows();

    MonodromyEffective eff;
    eff.quasienergies.resize(dim);
    eff.eigenvectors = q;
    for (Eigen::Index k = 0; k < dim; ++k) {
        double theta = -std::arg(schur.matrixT()(k, k)); // in [−π, π)
        if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi; // branch (−π, π]
        if (std::fabs(std::fabs(theta) - std::numbers::pi) < 1e-6) eff.branch_cut_flag = true;
        eff.quasienergies(k) = theta / period;
    }
    eff.h_eff = q * eff.quasienergies.cast<Complex>().asDiagonal() * q.adjoint();
    eff.h_eff = hermitize(eff.h_eff);
    return eff;
}

double fold_quasienergy(double eps, double omega) {
    double r = eps - omega * std::nearbyint(eps / omega);
    if (r <= -0.5 * omega) r += omega;
    if (r > 0.5 * omega) r -= omega;
    return r;
}

SpectralReport compare_effective(const EffectiveHamiltonian& a, const MonodromyEffective& b,
                                 double omega, double cluster_tol_rel) {
    const Eigen::Index dim = b.h_eff.rows();
    if (a.matrix.rows() != dim || a.matrix.cols() != dim)
        throw std::invalid_argument("compare_effective: dimension mismatch");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix);
    Eigen::VectorXd ea(dim);
    for (Eigen::Index k = 0; k < dim; ++k) ea(k) = fold_quasienergy(solver.eigenvalues()(k), omega);
    const Eigen::MatrixXcd& va = solver.eigenvectors();

    // all-pairs overlaps, matched greedily by descending overlap
    Eigen::MatrixXd overlap(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        for (Eigen::Index l = 0; l < dim; ++l)
            overlap(k, l) = std::norm(Complex(va.col(k).adjoint() * b.eigenvectors.col(l)));

    struct Pair {
        double o;
        int k, l;
    };
    std::vector<Pair> pairs;
    pairs.reserve(dim * dim);
    for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) pairs.push_back({overlap(k, l), k, l});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) { return p.o > q.o; });

    SpectralReport rep;
    rep.branch_cut_flag = b.branch_cut_flag;
    std::vector<bool> used_a(dim, false), used_b(dim, false);
    std::vector<int> match_of_b(dim, -1);
    for (const Pair& p : pairs) {
        if (used_a[p.k] || used_b[p.l]) continue;
        used_a[p.k] = true;
        used_b[p.l] = true;
        match_of_b[p.l] = p.k;
        rep.matches.emplace_back(p.k, p.l);
    }
    std::sort(rep.matches.begin(), rep.matches.end(),
              [](const auto& x, const auto& y) { return x.second < y.second; });

    double sum = 0.0;
    for (const auto& [k, l] : rep.matches) {
        const double d = std::fabs(fold_quasienergy(ea(k) - b.quasienergies(l), omega));
        rep.max_abs = std::max(rep.max_abs, d);
        sum += d;
    }
    rep.mean_abs = sum / static_cast<double>(dim);

    // clustered monodromy levels: compare matched subspaces by principal angles
    const double ctol = cluster_tol_rel * omega;
    std::vector<Eigen::Index> order(dim);
    for (Eigen::Index k = 0; k < dim; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](Eigen::Index p, Eigen::Index q) {
        return b.quasienergies(p) < b.quasienergies(q);
    });
    Eigen::Index start = 0;
    while (start < dim) {
        Eigen::Index stop = start + 1;
        while (stop < dim && b.quasienergies(order[stop]) - b.quasienergies(order[stop - 1]) < ctol)
            ++stop;
        const Eigen::Index size = stop - start;
        if (size >= 2) {
            Eigen::MatrixXcd vb_sub(dim, size), va_sub(dim, size);
            for (Eigen::Index j = 0; j < size; ++j) {
                vb_sub.col(j) = b.eigenvectors.col(order[start + j]);
                va_sub.col(j) = va.col(match_of_b[order[start + j]]);
            }
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(va_sub.adjoint() * vb_sub);
            for (Eigen::Index j = 0; j < size; ++j) {
                const double s = std::min(1.0, svd.singularValues()(j));
                rep.max_principal_angle = std::max(rep.max_principal_angle, std::acos(s));
            }
        }
        start = stop;
    }
    return rep;
}

StroboscopicSeries stroboscopic_evolve(const Eigen::MatrixXcd& u_period,
                                       const Eigen::VectorXcd& psi0, int n_periods,
                                       const FockBasis* basis) {
    if (n_periods < 0) throw std::invalid_argument("stroboscopic_evolve: n_periods must be >= 0");
    if (std::fabs(psi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("stroboscopic_evolve: psi0 must be normalized");
    if (basis && basis->dim() != psi0.size())
        throw std::invalid_argument("stroboscopic_evolve: basis dimension mismatch");

    StroboscopicSeries out;
    Eigen::VectorXcd psi = psi0;
    for (int n = 0; n <= n_periods; ++n) {
        if (n > 0) psi = u_period * psi;
        out.return_probability.push_back(std::norm(Complex(psi0.adjoint() * psi)));
        if (basis) {
            Eigen::VectorXd pop = Eigen::VectorXd::Zero(basis->L);
            for (Eigen::Index s = 0; s < basis->dim(); ++s) {
                const double w = std::norm(psi(s));
                for (int i = 0; i < basis->L; ++i) pop(i) += w * basis->states[s][i];
            }
            double mean = 0.0, second = 0.0;
            if (basis->N > 0) {
                for (int i = 0; i < basis->L; ++i) {
                    mean += i * pop(i);
                    second += static_cast<double>(i) * i * pop(i);
                }
                mean /= basis->N;
                second /= basis->N;
            }
            out.site_populations.push_back(std::move(pop));
            out.position_variance.push_back(second - mean * mean);
        }
    }
    return out;
}

} // namespace floquetflow
