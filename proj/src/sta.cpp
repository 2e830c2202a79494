#include "crane/sta.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace crane {

namespace {

double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

}  // namespace

std::vector<double> PolynomialAnsatz::coeffs() const {
    std::vector<double> a(scaled.size());
    double scale = 1.0;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        a[i] = scaled[i] / scale;
        scale *= t_f;
    }
    return a;
}

double PolynomialAnsatz::alpha(double t) const { return horner(scaled, t / t_f); }

double PolynomialAnsatz::alpha_dot(double t) const {
    return horner(derivative(scaled), t / t_f) / t_f;
}

double PolynomialAnsatz::alpha_ddot(double t) const {
    return horner(derivative(derivative(scaled)), t / t_f) / (t_f * t_f);
}

PolynomialAnsatz design_alpha(const CraneParams& params, const TransportTask& task,
                              const std::vector<double>& free_values) {
    const int n = static_cast<int>(free_values.size());
    const double t_f = task.t_f;
    const double rhs_tail = -task.d / (params.omega2() * t_f * t_f);

    // alpha = sum_{i=3}^{7+n} A_i tau^i; A_0..A_2 vanish by the t=0 boundary
    // conditions. Rows: alpha(1), alpha'(1), alpha''(1), int alpha,
    // int int alpha; the trailing free coefficients move to the RHS.
    auto constraint_column = [](double i) {
        return Eigen::Matrix<double, 5, 1>{1.0, i, i * (i - 1.0), 1.0 / (i + 1.0),
                                           1.0 / ((i + 1.0) * (i + 2.0))};
    };

    Eigen::Matrix<double, 5, 5> A;
    for (int col = 0; col < 5; ++col) A.col(col) = constraint_column(col + 3.0);
    Eigen::Matrix<double, 5, 1> b{0.0, 0.0, 0.0, 0.0, rhs_tail};
    for (int j = 0; j < n; ++j) b -= free_values[j] * constraint_column(j + 8.0);

    const Eigen::Matrix<double, 5, 1> sol = A.colPivHouseholderQr().solve(b);

    const double scale = std::max({1.0, std::abs(rhs_tail), sol.cwiseAbs().maxCoeff()});
    if (((A * sol - b).cwiseAbs().maxCoeff()) > 1e-10 * scale)
        throw std::runtime_error("design_alpha: constraint system did not solve cleanly");

    PolynomialAnsatz ans;
    ans.t_f = t_f;
    ans.free_values = free_values;
    ans.scaled.assign(8 + n, 0.0);
    for (int i = 0; i < 5; ++i) ans.scaled[i + 3] = sol(i);
    for (int j = 0; j < n; ++j) ans.scaled[j + 8] = free_values[j];
    return ans;
}

TrolleyProtocol trolley_from_alpha(const PolynomialAnsatz& ansatz, const CraneParams& params,
                                   const TransportTask& task) {
    const double t_f = ansatz.t_f;
    const double w2tf2 = params.omega2() * t_f * t_f;

    // x = -alpha - omega^2 * (double integral of alpha); in tau the double
    // integral of A_i tau^i is A_i tau^{i+2} / ((i+1)(i+2)).
    std::vector<double> xc(ansatz.scaled.size() + 2, 0.0);
    for (std::size_t i = 0; i < ansatz.scaled.size(); ++i) {
        xc[i] -= ansatz.scaled[i];
        xc[i + 2] -= w2tf2 * ansatz.scaled[i] /
                     (static_cast<double>(i + 1) * static_cast<double>(i + 2));
    }
    std::vector<double> xdc = derivative(xc);
    std::vector<double> xddc = derivative(xdc);

    return make_clamped_protocol(
        ProtocolKind::PolynomialSTA, task,
        [xc, t_f](double t) { return horner(xc, t / t_f); },
        [xdc, t_f](double t) { return horner(xdc, t / t_f) / t_f; },
        [xddc, t_f](double t) { return horner(xddc, t / t_f) / (t_f * t_f); });
}

}  // namespace crane
