#pragma once

#include "nsda/nudged_solver.hpp"
#include "nsda/operators.hpp"
#include "nsda/random_fields.hpp"
#include "nsda/spectral_field.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace nsda::testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline GridPtr grid(int m, double length = kTwoPi) { return share(make_grid(length, m)); }

using Profile = std::function<double(double, double)>;

// Spectral field whose physical samples are (f1(x, y), f2(x, y)).
inline SpectralVelocity sample(const GridPtr& g, const Profile& f1, const Profile& f2) {
  PhysicalVelocity p(g);
  const int m = g->points();
  const double dx = g->length() / m;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      p[0](i, j) = f1(i * dx, j * dx);
      p[1](i, j) = f2(i * dx, j * dx);
    }
  }
  return to_spectral(p);
}

// (sin x cos y, -cos x sin y) on the 2π torus.
inline SpectralVelocity taylor_green(const GridPtr& g) {
  return sample(
      g, [](double x, double y) { return std::sin(x) * std::cos(y); },
      [](double x, double y) { return -std::cos(x) * std::sin(y); });
}

// Real field exp(i k.x) a + c.c. set directly in spectral space, so its
// support is exact.
inline SpectralVelocity single_mode(const GridPtr& g, int k1, int k2, std::complex<double> a1,
                                    std::complex<double> a2) {
  SpectralVelocity f(g);
  const int m = g->points();
  const auto index = [m](int k) { return ((k % m) + m) % m; };
  f[0](index(k1), index(k2)) = a1;
  f[1](index(k1), index(k2)) = a2;
  f[0](index(-k1), index(-k2)) = std::conj(a1);
  f[1](index(-k1), index(-k2)) = std::conj(a2);
  return f;
}

inline SpectralVelocity random_solenoidal(const GridPtr& g, Rng& rng) {
  return random_field<double>(g, rng, RandomFieldShape{});
}

inline SpectralVelocity random_raw(const GridPtr& g, Rng& rng) {
  RandomFieldShape shape;
  shape.solenoidal = false;
  return random_field<double>(g, rng, shape);
}

inline double max_abs(const SpectralVelocity& f) {
  return std::max(f[0].abs().maxCoeff(), f[1].abs().maxCoeff());
}

// Direct convolution for P_σ[(u.∇)v] with both inputs and the output
// restricted to the dealias box.
inline SpectralVelocity convolution_oracle(const SpectralVelocity& u, const SpectralVelocity& v) {
  const WaveGrid& g = u.grid();
  const int m = g.points();
  const int r = g.dealias_radius();
  const double base = g.base_wavenumber();
  const auto index = [m](int k) { return ((k % m) + m) % m; };
  SpectralVelocity out(u.grid_ptr());
  for (int k1 = -r; k1 <= r; ++k1) {
    for (int k2 = -r; k2 <= r; ++k2) {
      std::complex<double> acc[2] = {0.0, 0.0};
      for (int p1 = -r; p1 <= r; ++p1) {
        for (int p2 = -r; p2 <= r; ++p2) {
          const int q1 = k1 - p1, q2 = k2 - p2;
          if (std::abs(q1) > r || std::abs(q2) > r) continue;
          const int pi = index(p1), pj = index(p2), qi = index(q1), qj = index(q2);
          const std::complex<double> dot =
              u[0](pi, pj) * std::complex<double>(0, base * q1) + u[1](pi, pj) * std::complex<double>(0, base * q2);
          acc[0] += dot * v[0](qi, qj);
          acc[1] += dot * v[1](qi, qj);
        }
      }
      const int n2 = k1 * k1 + k2 * k2;
      if (n2 == 0) continue;
      const std::complex<double> div = double(k1) * acc[0] + double(k2) * acc[1];
      out[0](index(k1), index(k2)) = acc[0] - double(k1) * div / double(n2);
      out[1](index(k1), index(k2)) = acc[1] - double(k2) * div / double(n2);
    }
  }
  return out;
}

// Relative error of the CNAB2 truth stepper against e^{-2νt} for the
// B-free Taylor-Green mode.
inline double taylor_green_decay_error(double nu, double dt, double t_end) {
  const GridPtr g = grid(32);
  const SpectralVelocity u0 = taylor_green(g);
  ImexState s = start(u0);
  const SpectralVelocity zero(g);
  const auto steps = std::llround(t_end / dt);
  for (long long n = 0; n < steps; ++n) s = step_truth(s, zero, nu, dt);
  const SpectralVelocity exact = std::exp(-2.0 * nu * t_end) * u0;
  return sobolev_norm(s.field - exact, 0.0) / sobolev_norm(exact, 0.0);
}

}  // namespace nsda::testing
