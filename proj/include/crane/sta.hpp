#pragma once

#include <vector>

#include "crane/params.hpp"
#include "crane/protocol.hpp"

namespace crane {

/// Polynomial auxiliary trajectory alpha(t) = sum_i a_i t^i of degree 7+n.
///
/// Coefficients are stored in the dimensionless variable tau = t/t_f
/// (alpha = sum_i A_i tau^i), which keeps the design linear system well
/// conditioned; physical-time coefficients a_i = A_i / t_f^i are derived on
/// demand. free_values holds the trailing scaled coefficients A_8..A_{7+n}
/// that the design treats as fixed inputs.
struct PolynomialAnsatz {
    double t_f = 1.0;
    std::vector<double> scaled;       ///< A_i, coefficient of tau^i
    std::vector<double> free_values;  ///< A_8..A_{7+n}, the n free trailing coefficients

    int n_free() const { return static_cast<int>(free_values.size()); }
    int degree() const { return static_cast<int>(scaled.size()) - 1; }

    /// Physical-time coefficients a_i = A_i / t_f^i (units m/s^i).
    std::vector<double> coeffs() const;

    double alpha(double t) const;
    double alpha_dot(double t) const;
    double alpha_ddot(double t) const;
};

/// Inverse-engineer the auxiliary trajectory: the six boundary conditions
/// alpha(t_b) = alphadot(t_b) = alphaddot(t_b) = 0 plus the two reduced
/// transport conditions int alpha = 0 and int int alpha = -d/omega^2 fix
/// a_0..a_7 once the trailing free coefficients are pinned to free_values
/// (scaled-tau basis).
PolynomialAnsatz design_alpha(const CraneParams& params, const TransportTask& task,
                              const std::vector<double>& free_values = {});

/// Synthesize the trolley trajectory x(t) = -alpha - omega^2 * (double
/// integral of alpha), a degree 9+n polynomial meeting
/// x(0)=xdot(0)=xddot(0)=0, x(t_f)=d, xdot(t_f)=xddot(t_f)=0.
TrolleyProtocol trolley_from_alpha(const PolynomialAnsatz& ansatz, const CraneParams& params,
                                   const TransportTask& task);

}  // namespace crane
