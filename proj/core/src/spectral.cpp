#include "anisolab/spectral.hpp"

#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

#include <fftw3.h>

#include "anisolab/errors.hpp"

namespace anisolab {
namespace {

// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

Index lattice_size(const std::vector<Index>& sizes) {
  Index m = 1;
  for (auto s : sizes) m *= s;
  return m;
}

void validate(const std::vector<Index>& sizes, int q) {
  if (sizes.size() < 2) throw ConfigError("spectral: need at least two axes");
  if (q < 1 || q > static_cast<int>(sizes.size()) - 1) throw ConfigError("spectral: invalid split q");
  for (auto s : sizes)
    if (s < 2) throw ConfigError("spectral: each axis needs at least 2 lattice points");
}

void unitary_dft(std::vector<Complex>& data, const std::vector<Index>& sizes, int sign) {
  std::vector<int> n(sizes.begin(), sizes.end());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (auto& c : data) c *= scale;
}

void require_zero_mean(const SpectralField& f) {
  const double tol = 1e-12 * std::max(1.0, f.l2_norm());
  if (std::abs(f[0]) > tol) {
    std::ostringstream os;
    os << "torus_solve: forcing has nonzero mean (|f(0)| = " << std::abs(f[0]) << ")";
    throw ConfigError(os.str());
  }
}

}  // namespace

SpectralField::SpectralField(std::vector<Index> sizes, int q)
    : sizes_(std::move(sizes)), q_(q), coeffs_(static_cast<std::size_t>(lattice_size(sizes_))) {
  validate(sizes_, q_);
}

SpectralField::SpectralField(std::vector<Index> sizes, int q, std::vector<Complex> coefficients)
    : sizes_(std::move(sizes)), q_(q), coeffs_(std::move(coefficients)) {
  validate(sizes_, q_);
  if (static_cast<Index>(coeffs_.size()) != lattice_size(sizes_))
    throw ConfigError("spectral: coefficient count does not match lattice");
}

SpectralField SpectralField::from_physical(std::span<const double> values, std::vector<Index> sizes, int q) {
  validate(sizes, q);
  if (static_cast<Index>(values.size()) != lattice_size(sizes))
    throw ConfigError("spectral: value count does not match lattice");
  std::vector<Complex> data(values.begin(), values.end());
  unitary_dft(data, sizes, FFTW_FORWARD);
  return SpectralField(std::move(sizes), q, std::move(data));
}

std::vector<Complex> SpectralField::to_physical() const {
  std::vector<Complex> data = coeffs_;
  unitary_dft(data, sizes_, FFTW_BACKWARD);
  return data;
}

void SpectralField::frequency(Index k, std::span<Index> xi) const {
  for (int i = dim() - 1; i >= 0; --i) {
    const Index n = sizes_[i];
    const Index c = k % n;
    k /= n;
    xi[i] = c < (n + 1) / 2 ? c : c - n;
  }
}

std::vector<Index> SpectralField::frequency(Index k) const {
  std::vector<Index> xi(static_cast<std::size_t>(dim()));
  frequency(k, xi);
  return xi;
}

Index SpectralField::index_of(std::span<const Index> xi) const {
  Index k = 0;
  for (int i = 0; i < dim(); ++i) {
    const Index n = sizes_[i];
    k = k * n + ((xi[i] % n) + n) % n;
  }
  return k;
}

double SpectralField::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

bool SpectralField::is_hermitian(double tol) const {
  const double scale = std::max(1.0, l2_norm());
  std::vector<Index> xi(static_cast<std::size_t>(dim()));
  for (Index k = 0; k < size(); ++k) {
    frequency(k, xi);
    for (auto& x : xi) x = -x;
    if (std::abs((*this)[k] - std::conj((*this)[index_of(xi)])) > tol * scale) return false;
  }
  return true;
}

double symbol(const Eigen::MatrixXd& a, int q, double epsilon, std::span<const Index> xi) {
  double s = 0.0;
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i) {
    const double f_i = (i < q ? epsilon : 1.0) * static_cast<double>(xi[i]);
    for (int j = 0; j < n; ++j) {
      const double f_j = (j < q ? epsilon : 1.0) * static_cast<double>(xi[j]);
      s += a(i, j) * f_i * f_j;
    }
  }
  return s;
}

SpectralField torus_solve(const SpectralField& f, double epsilon) {
  return torus_solve(Eigen::MatrixXd::Identity(f.dim(), f.dim()), f, epsilon);
}

SpectralField torus_solve(const Eigen::MatrixXd& a, const SpectralField& f, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("torus_solve: epsilon outside (0, 1]");
  if (a.rows() != f.dim() || a.cols() != f.dim()) throw ConfigError("torus_solve: matrix size mismatch");
  require_zero_mean(f);
  SpectralField u(f.sizes(), f.q());
  std::vector<Index> xi(static_cast<std::size_t>(f.dim()));
  for (Index k = 1; k < f.size(); ++k) {
    f.frequency(k, xi);
    const double s = symbol(a, f.q(), epsilon, xi);
    if (!(s > 0.0)) throw VerificationError("torus_solve: symbol is not positive off the zero mode");
    u[k] = f[k] / s;
  }
  return u;
}

SpectralField apply_symbol(const Eigen::MatrixXd& a, const SpectralField& u, double epsilon) {
  SpectralField f(u.sizes(), u.q());
  std::vector<Index> xi(static_cast<std::size_t>(u.dim()));
  for (Index k = 0; k < u.size(); ++k) {
    u.frequency(k, xi);
    f[k] = u[k] * symbol(a, u.q(), epsilon, xi);
  }
  return f;
}

HessianNorms spectral_hessian_norms(const SpectralField& u) {
  HessianNorms sq;
  const int n = u.dim(), q = u.q();
  std::vector<Index> xi(static_cast<std::size_t>(n));
  for (Index k = 0; k < u.size(); ++k) {
    const double m = std::norm(u[k]);
    if (m == 0.0) continue;
    u.frequency(k, xi);
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x2 = static_cast<double>(xi[i]) * static_cast<double>(xi[i]);
      (i < q ? s1 : s2) += x2;
    }
    // sum_{i,j in block} xi_i^2 xi_j^2 = (sum_i xi_i^2)^2
    sq.x1 += s1 * s1 * m;
    sq.x2 += s2 * s2 * m;
    sq.x1x2 += s1 * s2 * m;
  }
  return {std::sqrt(sq.x2), std::sqrt(sq.x1), std::sqrt(sq.x1x2)};
}

namespace {

BoundReport ratios(const Eigen::MatrixXd& a, double lambda, const SpectralField& f, double epsilon) {
  const SpectralField u = torus_solve(a, f, epsilon);
  const HessianNorms h = spectral_hessian_norms(u);
  const double fn = f.l2_norm();
  BoundReport r;
  r.epsilon = epsilon;
  r.lambda = lambda;
  if (fn > 0.0) {
    r.r_x2 = lambda * h.x2 / fn;
    r.r_x1 = lambda * epsilon * epsilon * h.x1 / fn;
    r.r_cross = std::sqrt(2.0) * lambda * epsilon * h.x1x2 / fn;
  }
  r.pass_x2 = r.r_x2 <= 1.0 + kBoundSlack;
  r.pass_x1 = r.r_x1 <= 1.0 + kBoundSlack;
  r.pass_cross = r.r_cross <= 1.0 + kBoundSlack;
  return r;
}

BoundReport enforce(BoundReport r) {
  auto fail = [&](const char* which, double value) {
    std::ostringstream os;
    os.precision(17);
    os << "spectral bound violated at eps=" << r.epsilon << ": " << which << " = " << value << " > 1";
    throw VerificationError(os.str());
  };
  if (!r.pass_x2) fail("r_x2", r.r_x2);
  if (!r.pass_x1) fail("r_x1", r.r_x1);
  if (!r.pass_cross) fail("r_cross", r.r_cross);
  return r;
}

}  // namespace

BoundReport laplacian_ratios(const SpectralField& f, double epsilon) {
  return ratios(Eigen::MatrixXd::Identity(f.dim(), f.dim()), 1.0, f, epsilon);
}

BoundReport constant_coefficient_ratios(const Eigen::MatrixXd& a, double lambda, const SpectralField& f, double epsilon) {
  return ratios(a, lambda, f, epsilon);
}

BoundReport check_laplacian_bounds(const SpectralField& f, double epsilon) { return enforce(laplacian_ratios(f, epsilon)); }

BoundReport check_constant_coefficient_bounds(const Eigen::MatrixXd& a, double lambda, const SpectralField& f, double epsilon) {
  return enforce(constant_coefficient_ratios(a, lambda, f, epsilon));
}

SpectralField random_zero_mean_forcing(std::vector<Index> sizes, int q, std::uint64_t seed) {
  validate(sizes, q);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(static_cast<std::size_t>(lattice_size(sizes)));
  double mean = 0.0;
  for (auto& x : v) mean += (x = normal(rng));
  mean /= static_cast<double>(v.size());
  for (auto& x : v) x -= mean;
  SpectralField f = SpectralField::from_physical(v, std::move(sizes), q);
  f[0] = 0.0;
  return f;
}

SpectralField single_mode(std::vector<Index> sizes, int q, std::span<const Index> xi) {
  SpectralField f(std::move(sizes), q);
  std::vector<Index> neg(xi.begin(), xi.end());
  for (auto& x : neg) x = -x;
  f[f.index_of(xi)] += 0.5;
  f[f.index_of(neg)] += 0.5;
  return f;
}

SpectralField x1_constant_forcing(std::vector<Index> sizes, int q, std::uint64_t seed) {
  validate(sizes, q);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  // values depend on the X2 coordinates only
  Index x2_count = 1;
  for (std::size_t i = static_cast<std::size_t>(q); i < sizes.size(); ++i) x2_count *= sizes[i];
  std::vector<double> profile(static_cast<std::size_t>(x2_count));
  double mean = 0.0;
  for (auto& x : profile) mean += (x = normal(rng));
  mean /= static_cast<double>(profile.size());
  for (auto& x : profile) x -= mean;
  std::vector<double> v(static_cast<std::size_t>(lattice_size(sizes)));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = profile[k % profile.size()];
  SpectralField f = SpectralField::from_physical(v, std::move(sizes), q);
  // exact zeros off the xi_X1 = 0 plane and at the origin
  std::vector<Index> xi(static_cast<std::size_t>(f.dim()));
  for (Index k = 0; k < f.size(); ++k) {
    f.frequency(k, xi);
    bool on_plane = true;
    for (int i = 0; i < q; ++i) on_plane = on_plane && xi[i] == 0;
    if (!on_plane) f[k] = 0.0;
  }
  f[0] = 0.0;
  return f;
}

}  // namespace anisolab
