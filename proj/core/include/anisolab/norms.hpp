#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "anisolab/field.hpp"

namespace anisolab {

/// Discrete L2 norm with the node-weight product rule,
/// sqrt(sum u_i^2 * prod h). Default region: all interior nodes.
double l2_norm(const ScalarField& u, const std::optional<SubdomainMask>& mask = std::nullopt);

/// sqrt(sum_k |v_k|^2) of a list of fields over a region.
double l2_norm(std::span<const ScalarField> components, const std::optional<SubdomainMask>& mask = std::nullopt);

/// (|u|^2 + |grad_X2 u|^2)^(1/2) over the interior.
double v12_norm(const ScalarField& u);

/// (|u|^2 + |grad_X2 u|^2 + |Hess_X2 u|^2_{L2(omega)})^(1/2).
double v22_norm(const ScalarField& u, const SubdomainMask& omega);

// Hessian-block seminorms over omega; the X1X2 block counts each mixed
// pair (i in X1, j in X2) once.
double hess_x2_seminorm(const ScalarField& u, const SubdomainMask& omega);
double hess_x1_seminorm(const ScalarField& u, const SubdomainMask& omega);
double hess_x1x2_seminorm(const ScalarField& u, const SubdomainMask& omega);
/// |grad_X1 u| over the interior.
double grad_x1_norm(const ScalarField& u);

struct NormBundle {
  double l2 = 0.0;
  double v12 = 0.0;
  std::vector<std::pair<SubdomainMask, double>> v22_by_mask;
};

NormBundle norm_bundle(const ScalarField& u, std::span<const SubdomainMask> masks);

/// sum_{n < family.size()} 2^-n t_n / (1 + t_n) with t_n = |u - v|^{omega_n}_{2,2}.
/// Truncation error of the series is at most 2^(1 - n_max).
double frechet_distance(const ScalarField& u, const ScalarField& v, const NestedFamily& family);

/// The same series from precomputed seminorm values t_n.
double frechet_series(std::span<const double> seminorms);

/// sigma(h) = max over fields of |tau_h v - v|_{L2(omega)} for each shift.
///
/// Each shift must keep omega + h strictly inside the domain (every shifted
/// index in [1, cells - 1]); otherwise ConfigError.
std::vector<std::pair<MultiIndex, double>> translation_modulus(std::span<const ScalarField> fields,
                                                               const SubdomainMask& omega,
                                                               std::span<const MultiIndex> shifts);

/// Same, for members made of several components (e.g. a Hessian block);
/// the member norm is sqrt(sum_k |tau_h v_k - v_k|^2).
std::vector<std::pair<MultiIndex, double>> translation_modulus(std::span<const std::vector<ScalarField>> members,
                                                               const SubdomainMask& omega,
                                                               std::span<const MultiIndex> shifts);

}  // namespace anisolab
