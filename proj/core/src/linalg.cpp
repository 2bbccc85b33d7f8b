#include "floquetflow/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>

namespace floquetflow {

Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& a, double* defect) {
    if (defect) *defect = 0.5 * (a - a.adjoint()).norm();
    return 0.5 * (a + a.adjoint());
}

double hermiticity_defect(const Eigen::MatrixXcd& a) {
    return (a - Eigen::MatrixXcd(a.adjoint())).norm();
}

double unitarity_defect(const Eigen::MatrixXcd& a) {
    return (a.adjoint() * a - Eigen::MatrixXcd::Identity(a.rows(), a.cols())).norm();
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a) {
    return a.exp();
}

Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& h, double s) {
    const Complex minus_i(0.0, -1.0);
    Eigen::MatrixXcd arg = minus_i * s * h;
    return arg.exp();
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double sorted_spectrum_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::VectorXd ea = hermitian_eigenvalues(a);
    Eigen::VectorXd eb = hermitian_eigenvalues(b);
    return (ea - eb).cwiseAbs().maxCoeff();
}

} // namespace floquetflow
