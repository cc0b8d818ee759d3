#pragma once

// Stencil generators shared by the full-grid assembly and the per-slice
// limit assembly. Both call emit(axis_a, s_a, axis_b, s_b, weight) for the
// node p + s_a e_{axis_a} + s_b e_{axis_b}; axis -1 means no offset.

#include <vector>

#include "anisolab/grid.hpp"

namespace anisolab::detail {

/// -div(A grad u) in flux form: arithmetic face averages on the diagonal
/// terms, centered composition d_i(a_ij d_j u) on the mixed terms.
/// coeff(p, i, j) returns a_ij at multi-index p.
template <class Coeff, class Emit>
void flux_stencil(const std::vector<double>& h, MultiIndex& p, Coeff&& coeff, Emit&& emit) {
  const int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    const double inv_h2 = 1.0 / (h[i] * h[i]);
    const double a_here = coeff(p, i, i);
    for (int s : {-1, 1}) {
      p[i] += s;
      const double a_face = 0.5 * (a_here + coeff(p, i, i));
      p[i] -= s;
      emit(i, s, -1, 0, -a_face * inv_h2);
      emit(-1, 0, -1, 0, a_face * inv_h2);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double w = 1.0 / (4.0 * h[i] * h[j]);
      for (int si : {-1, 1}) {
        p[i] += si;
        const double a = coeff(p, i, j);
        p[i] -= si;
        if (a == 0.0) continue;
        for (int sj : {-1, 1}) emit(i, si, j, sj, -static_cast<double>(si * sj) * a * w);
      }
    }
  }
}

/// -sum a_ij d2_ij u - sum_ij (d_i a_ij) d_j u with 3-point pure and 4-point
/// cross second differences. da(p, k, i, j) returns d_k a_ij.
template <class Coeff, class Deriv, class Emit>
void nondivergence_stencil(const std::vector<double>& h, MultiIndex& p, Coeff&& coeff, Deriv&& da, Emit&& emit) {
  const int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    const double a = coeff(p, i, i) / (h[i] * h[i]);
    emit(i, -1, -1, 0, -a);
    emit(i, 1, -1, 0, -a);
    emit(-1, 0, -1, 0, 2.0 * a);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double c = coeff(p, i, j) / (4.0 * h[i] * h[j]);
      if (c == 0.0) continue;
      for (int si : {-1, 1})
        for (int sj : {-1, 1}) emit(i, si, j, sj, -static_cast<double>(si * sj) * c);
    }
  }
  for (int j = 0; j < n; ++j) {
    double b = 0.0;
    for (int i = 0; i < n; ++i) b += da(p, i, i, j);
    if (b == 0.0) continue;
    const double w = b / (2.0 * h[j]);
    emit(j, 1, -1, 0, -w);
    emit(j, -1, -1, 0, w);
  }
}

}  // namespace anisolab::detail
