// linalg.hpp — small dense-matrix helpers shared across the library
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace floquetflow {

using Complex = std::complex<double>;

inline Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return a * b - b * a;
}

inline Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a * b - b * a;
}

// (A + A†)/2, returning the pre-symmetrization defect ‖A − A†‖_F/2 if asked
Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& a, double* defect = nullptr);

// ‖A − A†‖_F
double hermiticity_defect(const Eigen::MatrixXcd& a);

// ‖A†A − 1‖_F
double unitarity_defect(const Eigen::MatrixXcd& a);

// Dense matrix exponential (scaling-and-squaring Padé)
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a);

// exp(-i s H) for Hermitian H
Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& h, double s);

// Sorted (ascending) eigenvalues of a Hermitian matrix
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h);

// Max |a_k − b_k| over sorted eigenvalue lists of two Hermitian matrices
double sorted_spectrum_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

} // namespace floquetflow
