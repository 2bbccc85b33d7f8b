// fock.hpp — bosonic Fock bases and lattice operator matrices for a
// fixed-particle-number sector of an L-site chain or ring.
#pragma once

#include <Eigen/Dense>

#include <map>
#include <vector>

namespace floquetflow {

enum class Boundary { Open, Periodic };

// Occupation-number basis for N bosons on L sites.
//
// States are ordered lexicographically descending on the occupation vector,
// e.g. L=3, N=2: (2,0,0), (1,1,0), (1,0,1), (0,2,0), (0,1,1), (0,0,2).
// index_of is the exact inverse of the state list.
struct FockBasis {
    int L = 0;
    int N = 0;
    std::vector<std::vector<int>> states;
    std::map<std::vector<int>, int> index_of;

    Eigen::Index dim() const { return static_cast<Eigen::Index>(states.size()); }
    int index(const std::vector<int>& occ) const;
};

// Matrices of the lattice operators used throughout the engine, all acting
// within the fixed-N sector of `basis`:
//   hop_sym     Σ_i (c_i† c_{i+1} + c_{i+1}† c_i)
//   hop_plus    Σ_i c_i† c_{i+1}        (hop_minus = hop_plus†)
//   onsite      Σ_i n_i (n_i − 1)
//   tilt        Σ_i i · n_i             (site labels 0 … L−1)
//   density_hop Σ_i c_i† (n_i − n_{i+1}) c_{i+1} + h.c.
struct LatticeOperatorSet {
    Eigen::MatrixXd hop_sym;
    Eigen::MatrixXd hop_plus;
    Eigen::MatrixXd hop_minus;
    Eigen::MatrixXd onsite;
    Eigen::MatrixXd tilt;
    Eigen::MatrixXd density_hop;
};

// Enumerate the basis; dimension is binomial(N+L−1, N).
// Rejects L < 2 and N < 0.
FockBasis enumerate_basis(int L, int N);

// Build all operator matrices. Periodic boundary requires L ≥ 3: the ring
// geometry is ambiguous at L = 2 and is rejected rather than double-counting
// the single bond.
LatticeOperatorSet build_operators(const FockBasis& basis, Boundary boundary);

// The density-assisted hopping matrix alone (same operator as
// LatticeOperatorSet::density_hop).
Eigen::MatrixXd density_assisted_hop(const FockBasis& basis, Boundary boundary);

} // namespace floquetflow
