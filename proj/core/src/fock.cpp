#include "floquetflow/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace floquetflow {

namespace {

void enumerate_rec(int sites_left, int particles_left, std::vector<int>& prefix,
                   std::vector<std::vector<int>>& out) {
    if (sites_left == 1) {
        prefix.push_back(particles_left);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    // descending occupancy on the leading site gives descending lex order
    for (int n = particles_left; n >= 0; --n) {
        prefix.push_back(n);
        enumerate_rec(sites_left - 1, particles_left - n, prefix, out);
        prefix.pop_back();
    }
}

struct BondList {
    std::vector<std::pair<int, int>> bonds; // (i, i+1) pairs, wrapped if periodic
};

BondList make_bonds(int L, Boundary boundary) {
    if (boundary == Boundary::Periodic && L < 3)
        throw std::invalid_argument("build_operators: periodic boundary requires L >= 3");
    BondList b;
    const int last = (boundary == Boundary::Periodic) ? L : L - 1;
    for (int i = 0; i < last; ++i) b.bonds.emplace_back(i, (i + 1) % L);
    return b;
}

} // namespace

int FockBasis::index(const std::vector<int>& occ) const {
    auto it = index_of.find(occ);
    if (it == index_of.end()) throw std::invalid_argument("FockBasis::index: state not in basis");
    return it->second;
}

FockBasis enumerate_basis(int L, int N) {
    if (L < 2) throw std::invalid_argument("enumerate_basis: L must be >= 2");
    if (N < 0) throw std::invalid_argument("enumerate_basis: N must be >= 0");
    FockBasis basis;
    basis.L = L;
    basis.N = N;
    std::vector<int> prefix;
    prefix.reserve(L);
    enumerate_rec(L, N, prefix, basis.states);
    for (int k = 0; k < static_cast<int>(basis.states.size()); ++k)
        basis.index_of[basis.states[k]] = k;
    return basis;
}

LatticeOperatorSet build_operators(const FockBasis& basis, Boundary boundary) {
    const auto bonds = make_bonds(basis.L, boundary).bonds;
    const Eigen::Index d = basis.dim();

    LatticeOperatorSet ops;
    ops.hop_plus = Eigen::MatrixXd::Zero(d, d);
    ops.onsite = Eigen::MatrixXd::Zero(d, d);
    ops.tilt = Eigen::MatrixXd::Zero(d, d);
    ops.density_hop = Eigen::MatrixXd::Zero(d, d);

    for (Eigen::Index col = 0; col < d; ++col) {
        const std::vector<int>& n = basis.states[col];

        double onsite_val = 0.0, tilt_val = 0.0;
        for (int i = 0; i < basis.L; ++i) {
            onsite_val += static_cast<double>(n[i]) * (n[i] - 1);
            tilt_val += static_cast<double>(i) * n[i];
        }
        ops.onsite(col, col) = onsite_val;
        ops.tilt(col, col) = tilt_val;

        // c_i† c_j moves one particle j -> i:  <m| c_i† c_j |n> = sqrt((n_i+1) n_j)
        for (const auto& [i, j] : bonds) {
            if (n[j] == 0) continue;
            std::vector<int> m = n;
            m[j] -= 1;
            m[i] += 1;
            const int row = basis.index(m);
            const double amp = std::sqrt(static_cast<double>(n[i] + 1) * n[j]);
            ops.hop_plus(row, col) += amp;
            // c_i† (n_i − n_j) c_j: number operators act after c_j
            ops.density_hop(row, col) += amp * static_cast<double>(n[i] - (n[j] - 1));
        }
    }

    ops.hop_minus = ops.hop_plus.transpose();
    ops.hop_sym = ops.hop_plus + ops.hop_minus;
    ops.density_hop = ops.density_hop + Eigen::MatrixXd(ops.density_hop.transpose());
    return ops;
}

Eigen::MatrixXd density_assisted_hop(const FockBasis& basis, Boundary boundary) {
    return build_operators(basis, boundary).density_hop;
}

} // namespace floquetflow
