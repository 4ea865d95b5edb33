#pragma once

// Spectral operators on the periodic square: Leray projection, powers of the
// Stokes operator, shell projectors, the dealiased advection term and the
// Sobolev norms used throughout the error analysis.

#include "nsda/errors.hpp"
#include "nsda/spectral_field.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace nsda {

// Orthogonal projection onto divergence-free, zero-mean fields:
//   coeff'(k) = coeff(k) - k (k . coeff(k)) / |k|^2.
// The mean mode and the Nyquist row/column are zeroed. A mode whose
// divergence is at the round-off level (16 ulps of |k||coeff|) is left as is,
// and a projected mode that still misses that level (a mostly-gradient input
// leaves round-off of the input's size) is projected again. Every output mode
// then passes the test, so applying the projector twice is bit-exact.
template <typename Scalar>
SpectralField<Scalar> leray_project(const SpectralField<Scalar>& f) {
  const WaveGrid& g = f.grid();
  const int m = g.points();
  const Scalar eps = Scalar(16) * std::numeric_limits<Scalar>::epsilon();
  SpectralField<Scalar> out = f;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const int n2 = g.norm_sq(i, j);
      if (n2 == 0 || g.is_nyquist(i, j)) {
        out[0](i, j) = 0;
        out[1](i, j) = 0;
        continue;
      }
      const Scalar k1 = Scalar(g.wavenumber(i));
      const Scalar k2 = Scalar(g.wavenumber(j));
      const Scalar kn = std::sqrt(Scalar(n2));
      std::complex<Scalar> c1 = f[0](i, j);
      std::complex<Scalar> c2 = f[1](i, j);
      for (int pass = 0; pass < 8; ++pass) {
        const std::complex<Scalar> div = k1 * c1 + k2 * c2;
        if (std::abs(div) <= eps * kn * std::sqrt(std::norm(c1) + std::norm(c2))) break;
        const std::complex<Scalar> s = div / Scalar(n2);
        c1 -= k1 * s;
        c2 -= k2 * s;
      }
      out[0](i, j) = c1;
      out[1](i, j) = c2;
    }
  }
  return out;
}

// max_k |k . coeff(k)| / (|k| |coeff(k)|) over nonzero modes.
template <typename Scalar>
Scalar divergence_defect(const SpectralField<Scalar>& f) {
  const WaveGrid& g = f.grid();
  Scalar worst = 0;
  for (int j = 0; j < g.points(); ++j) {
    for (int i = 0; i < g.points(); ++i) {
      const int n2 = g.norm_sq(i, j);
      if (n2 == 0) continue;
      const std::complex<Scalar> c1 = f[0](i, j), c2 = f[1](i, j);
      const Scalar mag = std::sqrt(std::norm(c1) + std::norm(c2));
      if (mag == 0) continue;
      const auto div = Scalar(g.wavenumber(i)) * c1 + Scalar(g.wavenumber(j)) * c2;
      worst = std::max(worst, std::abs(div) / (std::sqrt(Scalar(n2)) * mag));
    }
  }
  return worst;
}

template <typename Scalar>
bool has_zero_mean(const SpectralField<Scalar>& f) {
  return f[0](0, 0) == std::complex<Scalar>(0) && f[1](0, 0) == std::complex<Scalar>(0);
}

// A^alpha, coeff'(k) = lambda(k)^alpha coeff(k). Negative powers need a
// zero-mean input.
template <typename Scalar>
SpectralField<Scalar> stokes_apply(const SpectralField<Scalar>& f, Scalar alpha) {
  if (alpha < 0 && !has_zero_mean(f)) {
    throw ConfigError("negative Stokes power applied to a field with nonzero mean");
  }
  const WaveGrid& g = f.grid();
  SpectralField<Scalar> out = f;
  if (alpha == 0) return out;
  const RealArray<Scalar> factor = g.lambda_table().cast<Scalar>().pow(alpha);
  for (int c = 0; c < 2; ++c) {
    out[c] *= factor.template cast<std::complex<Scalar>>();
    out[c](0, 0) = 0;
  }
  return out;
}

// Keeps the modes with |k|^2 <= kappa^2.
template <typename Scalar>
SpectralField<Scalar> project_low(const SpectralField<Scalar>& f, const ShellCutoff& cut) {
  const WaveGrid& g = f.grid();
  SpectralField<Scalar> out = f;
  for (int j = 0; j < g.points(); ++j) {
    for (int i = 0; i < g.points(); ++i) {
      if (!cut.contains(g.norm_sq(i, j))) {
        out[0](i, j) = 0;
        out[1](i, j) = 0;
      }
    }
  }
  return out;
}

// Complement of project_low; the two always sum to the input exactly.
template <typename Scalar>
SpectralField<Scalar> project_high(const SpectralField<Scalar>& f, const ShellCutoff& cut) {
  const WaveGrid& g = f.grid();
  SpectralField<Scalar> out = f;
  for (int j = 0; j < g.points(); ++j) {
    for (int i = 0; i < g.points(); ++i) {
      if (cut.contains(g.norm_sq(i, j))) {
        out[0](i, j) = 0;
        out[1](i, j) = 0;
      }
    }
  }
  return out;
}

// Zeroes everything outside the 2/3-rule box |k|_inf <= floor(M/3).
template <typename Scalar>
void truncate_dealias(SpectralField<Scalar>& f) {
  const WaveGrid& g = f.grid();
  for (int j = 0; j < g.points(); ++j) {
    for (int i = 0; i < g.points(); ++i) {
      if (!g.resolved(i, j)) {
        f[0](i, j) = 0;
        f[1](i, j) = 0;
      }
    }
  }
}

// B(u, v) = P_σ((u.∇)v), evaluated pseudospectrally on the M x M grid with
// 2/3-rule truncation of the inputs and of the product.
template <typename Scalar>
SpectralField<Scalar> bilinear_B(const SpectralField<Scalar>& u, const SpectralField<Scalar>& v) {
  u.check_same_grid(v);
  const WaveGrid& g = u.grid();
  const int m = g.points();
  SpectralField<Scalar> ut = u, vt = v;
  truncate_dealias(ut);
  truncate_dealias(vt);

  // i k_x and i k_y multipliers in FFT order.
  ComplexArray<Scalar> ikx(m, m), iky(m, m);
  const Scalar base = Scalar(g.base_wavenumber());
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      ikx(i, j) = std::complex<Scalar>(0, base * Scalar(g.wavenumber(i)));
      iky(i, j) = std::complex<Scalar>(0, base * Scalar(g.wavenumber(j)));
    }
  }

  const auto [u1, u2] = to_physical_pair<Scalar>(ut[0], ut[1]);
  const auto [dxv1, dyv1] = to_physical_pair<Scalar>(ikx * vt[0], iky * vt[0]);
  const auto [dxv2, dyv2] = to_physical_pair<Scalar>(ikx * vt[1], iky * vt[1]);

  const RealArray<Scalar> adv1 = u1 * dxv1 + u2 * dyv1;
  const RealArray<Scalar> adv2 = u1 * dxv2 + u2 * dyv2;

  auto [a1, a2] = to_spectral_pair<Scalar>(g, adv1, adv2);
  SpectralField<Scalar> out(u.grid_ptr());
  out[0] = std::move(a1);
  out[1] = std::move(a2);
  truncate_dealias(out);
  return leray_project(out);
}

// L^2 inner product (f, h) = ∫ f . h dx = L^2 sum_k Re(conj(f_k) . h_k).
template <typename Scalar>
Scalar inner(const SpectralField<Scalar>& f, const SpectralField<Scalar>& h) {
  f.check_same_grid(h);
  const Scalar area = Scalar(f.grid().length() * f.grid().length());
  const Scalar sum = (f[0].conjugate() * h[0]).real().sum() + (f[1].conjugate() * h[1]).real().sum();
  return area * sum;
}

// (sum_k lambda(k)^s |coeff(k)|^2 L^2)^{1/2}. s = 0 is the L^2 norm (the
// mean mode counts), s = 1 the H^1 seminorm ||.||, s = -1 the dual norm;
// for s != 0 the mean mode is skipped.
template <typename Scalar>
Scalar sobolev_norm(const SpectralField<Scalar>& f, Scalar s) {
  const WaveGrid& g = f.grid();
  const RealArray<Scalar> energy = f[0].abs2() + f[1].abs2();
  Scalar sum = 0;
  if (s == 0) {
    sum = energy.sum();
  } else {
    RealArray<Scalar> weight = g.lambda_table().cast<Scalar>().pow(s);
    weight(0, 0) = 0;
    sum = (weight * energy).sum();
  }
  return std::sqrt(sum) * Scalar(g.length());
}

// |g|_{L^2} / (nu^2 lambda1).
template <typename Scalar>
Scalar grashof(const SpectralField<Scalar>& g, Scalar nu, Scalar lambda1) {
  if (!(nu > 0)) throw ConfigError("grashof number needs nu > 0, got " + std::to_string(double(nu)));
  return sobolev_norm(g, Scalar(0)) / (nu * nu * lambda1);
}

// ½|u|^2 and ½||u||^2 (for divergence-free u the latter is ½|curl u|^2).
template <typename Scalar>
Scalar energy(const SpectralField<Scalar>& u) {
  const Scalar n = sobolev_norm(u, Scalar(0));
  return Scalar(0.5) * n * n;
}
template <typename Scalar>
Scalar enstrophy(const SpectralField<Scalar>& u) {
  const Scalar n = sobolev_norm(u, Scalar(1));
  return Scalar(0.5) * n * n;
}

}  // namespace nsda
