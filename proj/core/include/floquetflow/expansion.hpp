// expansion.hpp — closed-form high-frequency results: Bessel functions,
// the tunneling-interaction rate series, and the resummed effective
// Hamiltonians in the strong-interaction / strong-tunneling regimes.
#pragma once

#include "floquetflow/fock.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>

namespace floquetflow {

// Physical knobs of the driven lattice. x = Kdrive/omega is the single
// dimensionless driving parameter exposed everywhere.
struct DrivingParams {
    double J = 1.0;
    double U = 0.0;
    double Kdrive = 0.0;
    double omega = 1.0;

    double x() const { return Kdrive / omega; }
};

// Truncation controls for the (formally infinite) series.
struct SeriesControls {
    int m_max = 60;          // Bessel-sum truncation
    int n_max = 1;           // order truncation of the operator series
    double term_tol = 1e-15; // drop terms below this magnitude
};

// Partial-sum result with the last kept term as an error proxy.
struct SeriesValue {
    double value = 0.0;
    double last_term = 0.0;
    int terms = 0;
};

enum class Method {
    Flow,
    ExpansionOrder0,
    ExpansionOrder1,
    ExpansionSeriesU,
    ExpansionSeriesJ,
    Monodromy,
};

std::string method_name(Method m);

// Dense Hermitian effective Hamiltonian on the system space plus provenance
// (method, cutoffs, tolerances, parameter values).
struct EffectiveHamiltonian {
    Eigen::MatrixXcd matrix;
    Method method = Method::ExpansionOrder0;
    std::map<std::string, double> meta;
};

// Bessel function of the first kind J_m(x), m >= 0, |x| <= 30, m <= 60.
// Miller downward recurrence with Neumann-sum normalization; ascending
// series for very small |x|. Absolute accuracy <= 1e-13 on the supported
// range, validated against an integral quadrature oracle in the tests.
double bessel_j(int m, double x);

// beta(x) = 2 Σ_{m>=1} J_{2m-1}(x)/(2m-1), the tunneling-interaction rate.
SeriesValue beta(double x, const SeriesControls& controls = {});

// beta_n^±(x) = (±1)^n Σ_{m>=1} J_m(x) (1+(−1)^{m−n})/m^n.
// Only m ≡ n (mod 2) contribute; sign = +1 or −1.
SeriesValue beta_n(int n, int sign, double x, const SeriesControls& controls = {});

// Lowest-order effective Hamiltonian: J·J0(x)·hop_sym + U·onsite.
EffectiveHamiltonian h_eff0(const DrivingParams& params, const FockBasis& basis,
                            Boundary boundary);

// First-order correction: 2·beta(x)·(U J/omega)·density_hop.
EffectiveHamiltonian h_eff1(const DrivingParams& params, const FockBasis& basis,
                            Boundary boundary, const SeriesControls& controls = {});

// Recursively defined operator strings (as dense matrices):
//   C_1^± = T_1^± = [Σ_i c_i† c_{i±1}, Σ_j n_j(n_j−1)]
//   C_{n+1}^± = [C_n^±, Σ_j n_j(n_j−1)]
//   T_{n+1}^± = [T_n^±, Σ_j (c_j† c_{j+1} + c_{j+1}† c_j)]
// n <= 8 supported; sign = +1 or −1.
Eigen::MatrixXd recursive_C(int n, int sign, const FockBasis& basis, Boundary boundary);
Eigen::MatrixXd recursive_T(int n, int sign, const FockBasis& basis, Boundary boundary);

// Strong-interaction series (first order in J, all orders in U/omega):
//   H^(0) − Σ_{n=1}^{n_max} J (U/omega)^n (beta_n^+ C_n^+ + beta_n^- C_n^-)
EffectiveHamiltonian h_eff_series_U(const DrivingParams& params, const FockBasis& basis,
                                    Boundary boundary, const SeriesControls& controls);

// Strong-tunneling series (first order in U, all orders in J/omega):
//   H^(0) − U Σ_{n=1}^{n_max} J0(x)^{n−1} (J/omega)^n (beta_n^+ T_n^+ + beta_n^- T_n^-)
EffectiveHamiltonian h_eff_series_J(const DrivingParams& params, const FockBasis& basis,
                                    Boundary boundary, const SeriesControls& controls);

} // namespace floquetflow
