#include "anisolab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anisolab/errors.hpp"
#include "anisolab/fd_operators.hpp"

namespace anisolab {
namespace {

double sum_squares(const ScalarField& u, const SubdomainMask& mask) {
  double s = 0.0;
  mask.for_each(u.grid(), [&](Index l) { s += u[l] * u[l]; });
  return s;
}

double block_squares(const HessianBlock& block, const SubdomainMask& omega) {
  double s = 0.0;
  for (const auto& row : block)
    for (const auto& f : row) s += sum_squares(f, omega);
  return s;
}

}  // namespace

double l2_norm(const ScalarField& u, const std::optional<SubdomainMask>& mask) {
  const SubdomainMask m = mask ? *mask : interior_nodes(u.grid());
  return std::sqrt(sum_squares(u, m) * u.grid().cell_volume());
}

double l2_norm(std::span<const ScalarField> components, const std::optional<SubdomainMask>& mask) {
  double s = 0.0;
  for (const auto& c : components) {
    const double n = l2_norm(c, mask);
    s += n * n;
  }
  return std::sqrt(s);
}

double v12_norm(const ScalarField& u) {
  const double a = l2_norm(u);
  const auto g = grad_x2(u);
  const double b = l2_norm(std::span<const ScalarField>(g));
  return std::sqrt(a * a + b * b);
}

double hess_x2_seminorm(const ScalarField& u, const SubdomainMask& omega) {
  return std::sqrt(block_squares(hess_x2(u), omega) * u.grid().cell_volume());
}

double hess_x1_seminorm(const ScalarField& u, const SubdomainMask& omega) {
  return std::sqrt(block_squares(hess_x1(u), omega) * u.grid().cell_volume());
}

double hess_x1x2_seminorm(const ScalarField& u, const SubdomainMask& omega) {
  return std::sqrt(block_squares(hess_x1x2(u), omega) * u.grid().cell_volume());
}

double grad_x1_norm(const ScalarField& u) {
  const auto g = grad_x1(u);
  return l2_norm(std::span<const ScalarField>(g));
}

double v22_norm(const ScalarField& u, const SubdomainMask& omega) {
  const double a = v12_norm(u);
  const double b = hess_x2_seminorm(u, omega);
  return std::sqrt(a * a + b * b);
}

NormBundle norm_bundle(const ScalarField& u, std::span<const SubdomainMask> masks) {
  NormBundle b;
  b.l2 = l2_norm(u);
  b.v12 = v12_norm(u);
  for (const auto& m : masks) {
    const double h = hess_x2_seminorm(u, m);
    b.v22_by_mask.emplace_back(m, std::sqrt(b.v12 * b.v12 + h * h));
  }
  return b;
}

double frechet_series(std::span<const double> seminorms) {
  double d = 0.0;
  double w = 1.0;
  for (double t : seminorms) {
    d += w * t / (1.0 + t);
    w *= 0.5;
  }
  return d;
}

double frechet_distance(const ScalarField& u, const ScalarField& v, const NestedFamily& family) {
  const ScalarField diff = u - v;
  // |.|_{1,2} is shared by all terms; only the Hessian part depends on omega_n
  const double base = v12_norm(diff);
  std::vector<double> t;
  t.reserve(family.size());
  for (const auto& m : family.masks) {
    const double h = hess_x2_seminorm(diff, m);
    t.push_back(std::sqrt(base * base + h * h));
  }
  return frechet_series(t);
}

std::vector<std::pair<MultiIndex, double>> translation_modulus(std::span<const std::vector<ScalarField>> members,
                                                               const SubdomainMask& omega,
                                                               std::span<const MultiIndex> shifts) {
  std::vector<std::pair<MultiIndex, double>> out;
  const ScalarField* first = nullptr;
  for (const auto& m : members)
    if (!m.empty()) {
      first = &m.front();
      break;
    }
  if (first == nullptr) {
    for (const auto& h : shifts) out.emplace_back(h, 0.0);
    return out;
  }
  const Grid& g = first->grid();
  for (const auto& h : shifts) {
    if (static_cast<int>(h.size()) != g.dim()) throw ConfigError("translation_modulus: shift has wrong length");
    for (int i = 0; i < g.dim(); ++i) {
      if (omega.lo(i) + h[i] < 1 || omega.hi(i) + h[i] > g.cells(i) - 1) {
        std::ostringstream os;
        os << "translation_modulus: shift " << h[i] << " on axis " << i
           << " is not admissible (|h| must stay below dist(boundary, omega))";
        throw ConfigError(os.str());
      }
    }
    double sigma = 0.0;
    for (const auto& m : members) {
      double sq = 0.0;
      for (const auto& v : m) {
        if (!(v.grid() == g)) throw ConfigError("translation_modulus: fields live on different grids");
        ScalarField d = shift_field(v, h, omega);
        d -= v;
        const double n = l2_norm(d, omega);
        sq += n * n;
      }
      sigma = std::max(sigma, std::sqrt(sq));
    }
    out.emplace_back(h, sigma);
  }
  return out;
}

std::vector<std::pair<MultiIndex, double>> translation_modulus(std::span<const ScalarField> fields,
                                                               const SubdomainMask& omega,
                                                               std::span<const MultiIndex> shifts) {
  std::vector<std::vector<ScalarField>> members;
  members.reserve(fields.size());
  for (const auto& v : fields) members.push_back({v});
  return translation_modulus(std::span<const std::vector<ScalarField>>(members), omega, shifts);
}

}  // namespace anisolab
