#include "floquetflow/expansion.hpp"

#include "floquetflow/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace floquetflow {

std::string method_name(Method m) {
    switch (m) {
        case Method::Flow: return "flow";
        case Method::ExpansionOrder0: return "expansion_order_0";
        case Method::ExpansionOrder1: return "expansion_order_1";
        case Method::ExpansionSeriesU: return "series_U";
        case Method::ExpansionSeriesJ: return "series_J";
        case Method::Monodromy: return "monodromy";
    }
    return "unknown";
}

namespace {

// Ascending power series, adequate only for very small |x|.
double bessel_series_small(int m, double x) {
    const double t = 0.5 * x;
    double fact = 1.0;
    for (int k = 2; k <= m; ++k) fact *= k;
    const double t2 = t * t;
    double lead = std::pow(t, m) / fact;
    return lead * (1.0 - t2 / (m + 1.0) + 0.5 * t2 * t2 / ((m + 1.0) * (m + 2.0)));
}

// Miller downward recurrence, normalized by J0 + 2 Σ J_{2k} = 1.
double bessel_miller(int m, double x) {
    const int start0 = std::max(m, static_cast<int>(std::ceil(x))) + 40;
    const int start = start0 + (start0 % 2); // even start keeps the Neumann sum aligned
    const double rescale = 1e250;

    double j_up = 0.0;    // J_{k+1}
    double j_cur = 1e-30; // J_k, arbitrary seed
    double neumann = (start % 2 == 0) ? 2.0 * j_cur : 0.0;
    double kept = (m == start) ? j_cur : 0.0;

    for (int k = start; k >= 1; --k) {
        const double j_down = (2.0 * k / x) * j_cur - j_up;
        j_up = j_cur;
        j_cur = j_down;
        const int idx = k - 1;
        if (idx > 0 && idx % 2 == 0) neumann += 2.0 * j_cur;
        if (idx == m) kept = j_cur;
        if (std::fabs(j_cur) > rescale) {
            j_cur /= rescale;
            j_up /= rescale;
            neumann /= rescale;
            kept /= rescale;
        }
    }
    neumann += j_cur; // j_cur now holds the J_0 estimate
    return kept / neumann;
}

} // namespace

double bessel_j(int m, double x) {
    if (m < 0 || m > 60) throw std::invalid_argument("bessel_j: order must be in [0, 60]");
    if (std::fabs(x) > 30.0) throw std::invalid_argument("bessel_j: |x| must be <= 30");
    const double ax = std::fabs(x);
    double value;
    if (ax == 0.0)
        value = (m == 0) ? 1.0 : 0.0;
    else if (ax < 1e-6)
        value = bessel_series_small(m, ax);
    else
        value = bessel_miller(m, ax);
    if (x < 0.0 && m % 2 == 1) value = -value;
    return value;
}

SeriesValue beta(double x, const SeriesControls& controls) {
    SeriesValue out;
    for (int m = 1; m <= controls.m_max; ++m) {
        const int order = 2 * m - 1;
        if (order > 60) break;
        const double term = 2.0 * bessel_j(order, x) / order;
        out.value += term;
        out.last_term = std::fabs(term);
        out.terms = m;
        // oscillatory region: a single small term is not evidence of a small
        // tail, so only stop once past the turning point order > |x|
        if (std::fabs(term) < controls.term_tol && order > std::fabs(x)) break;
    }
    return out;
}

SeriesValue beta_n(int n, int sign, double x, const SeriesControls& controls) {
    if (n < 1) throw std::invalid_argument("beta_n: n must be >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("beta_n: sign must be +1 or -1");
    const double sign_factor = (sign == 1 || n % 2 == 0) ? 1.0 : -1.0; // (±1)^n
    SeriesValue out;
    for (int m = 1; m <= controls.m_max && m <= 60; ++m) {
        if ((m - n) % 2 != 0) continue; // 1 + (−1)^{m−n} vanishes
        const double term = sign_factor * bessel_j(m, x) * 2.0 / std::pow(static_cast<double>(m), n);
        out.value += term;
        out.last_term = std::fabs(term);
        out.terms += 1;
        if (std::fabs(term) < controls.term_tol && m > std::fabs(x)) break;
    }
    return out;
}

EffectiveHamiltonian h_eff0(const DrivingParams& params, const FockBasis& basis,
                            Boundary boundary) {
    const LatticeOperatorSet ops = build_operators(basis, boundary);
    const double j0 = bessel_j(0, params.x());
    EffectiveHamiltonian eff;
    eff.method = Method::ExpansionOrder0;
    eff.matrix = (params.J * j0 * ops.hop_sym + params.U * ops.onsite).cast<Complex>();
    eff.meta = {{"J", params.J},         {"U", params.U}, {"Kdrive", params.Kdrive},
                {"omega", params.omega}, {"x", params.x()}, {"J0", j0}};
    return eff;
}

EffectiveHamiltonian h_eff1(const DrivingParams& params, const FockBasis& basis,
                            Boundary boundary, const SeriesControls& controls) {
    const Eigen::MatrixXd dh = density_assisted_hop(basis, boundary);
    const SeriesValue b = beta(params.x(), controls);
    EffectiveHamiltonian eff;
    eff.method = Method::ExpansionOrder1;
    eff.matrix = (2.0 * b.value * params.U * params.J / params.omega * dh).cast<Complex>();
    eff.meta = {{"J", params.J},         {"U", params.U},   {"Kdrive", params.Kdrive},
                {"omega", params.omega}, {"x", params.x()}, {"beta", b.value},
                {"beta_last_term", b.last_term}};
    return eff;
}

namespace {

Eigen::MatrixXd first_order_string(int sign, const LatticeOperatorSet& ops) {
    const Eigen::MatrixXd& hop_dir = (sign == 1) ? ops.hop_plus : ops.hop_minus;
    return commutator(hop_dir, ops.onsite);
}

} // namespace

Eigen::MatrixXd recursive_C(int n, int sign, const FockBasis& basis, Boundary boundary) {
    if (n < 1 || n > 8) throw std::invalid_argument("recursive_C: n must be in [1, 8]");
    if (sign != 1 && sign != -1) throw std::invalid_argument("recursive_C: sign must be +1 or -1");
    const LatticeOperatorSet ops = build_operators(basis, boundary);
    Eigen::MatrixXd c = first_order_string(sign, ops);
    for (int k = 2; k <= n; ++k) c = commutator(c, ops.onsite);
    return c;
}

Eigen::MatrixXd recursive_T(int n, int sign, const FockBasis& basis, Boundary boundary) {
    if (n < 1 || n > 8) throw std::invalid_argument("recursive_T: n must be in [1, 8]");
    if (sign != 1 && sign != -1) throw std::invalid_argument("recursive_T: sign must be +1 or -1");
    const LatticeOperatorSet ops = build_operators(basis, boundary);
    Eigen::MatrixXd t = first_order_string(sign, ops);
    for (int k = 2; k <= n; ++k) t = commutator(t, ops.hop_sym);
    return t;
}

EffectiveHamiltonian h_eff_series_U(const DrivingParams& params, const FockBasis& basis,
                                    Boundary boundary, const SeriesControls& controls) {
    const LatticeOperatorSet ops = build_operators(basis, boundary);
    const double x = params.x();
    Eigen::MatrixXd h = params.J * bessel_j(0, x) * ops.hop_sym + params.U * ops.onsite;

    Eigen::MatrixXd c_plus = first_order_string(1, ops);
    Eigen::MatrixXd c_minus = first_order_string(-1, ops);
    double last_term_norm = 0.0;
    for (int n = 1; n <= controls.n_max; ++n) {
        if (n > 1) {
            c_plus = commutator(c_plus, ops.onsite);
            c_minus = commutator(c_minus, ops.onsite);
        }
        const double bp = beta_n(n, 1, x, controls).value;
        const double bm = beta_n(n, -1, x, controls).value;
        const double coeff = params.J * std::pow(params.U / params.omega, n);
        const Eigen::MatrixXd term = coeff * (bp * c_plus + bm * c_minus);
        h -= term;
        last_term_norm = term.norm();
        if (last_term_norm < controls.term_tol) break;
    }

    EffectiveHamiltonian eff;
    eff.method = Method::ExpansionSeriesU;
    double defect = 0.0;
    eff.matrix = hermitize(h.cast<Complex>(), &defect);
    eff.meta = {{"J", params.J},       {"U", params.U},
                {"Kdrive", params.Kdrive}, {"omega", params.omega},
                {"x", x},              {"n_max", static_cast<double>(controls.n_max)},
                {"last_term_norm", last_term_norm}, {"hermitize_defect", defect}};
    return eff;
}

EffectiveHamiltonian h_eff_series_J(const DrivingParams& params, const FockBasis& basis,
                                    Boundary boundary, const SeriesControls& controls) {
    const LatticeOperatorSet ops = build_operators(basis, boundary);
    const double x = params.x();
    const double j0 = bessel_j(0, x);
    Eigen::MatrixXd h = params.J * j0 * ops.hop_sym + params.U * ops.onsite;

    Eigen::MatrixXd t_plus = first_order_string(1, ops);
    Eigen::MatrixXd t_minus = first_order_string(-1, ops);
    double last_term_norm = 0.0;
    for (int n = 1; n <= controls.n_max; ++n) {
        if (n > 1) {
            t_plus = commutator(t_plus, ops.hop_sym);
            t_minus = commutator(t_minus, ops.hop_sym);
        }
        const double bp = beta_n(n, 1, x, controls).value;
        const double bm = beta_n(n, -1, x, controls).value;
        const double coeff = params.U * std::pow(j0, n - 1) * std::pow(params.J / params.omega, n);
        const Eigen::MatrixXd term = coeff * (bp * t_plus + bm * t_minus);
        h -= term;
        last_term_norm = term.norm();
        if (last_term_norm < controls.term_tol) break;
    }

    EffectiveHamiltonian eff;
    eff.method = Method::ExpansionSeriesJ;
    double defect = 0.0;
    eff.matrix = hermitize(h.cast<Complex>(), &defect);
    eff.meta = {{"J", params.J},       {"U", params.U},
                {"Kdrive", params.Kdrive}, {"omega", params.omega},
                {"x", x},              {"n_max", static_cast<double>(controls.n_max)},
                {"last_term_norm", last_term_norm}, {"hermitize_defect", defect}};
    return eff;
}

} // namespace floquetflow
