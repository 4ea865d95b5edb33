#pragma once

#include "nsda/spectral_field.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

namespace nsda {

using Rng = std::mt19937_64;

// Which modes a random field may populate and with what amplitude.
struct RandomFieldShape {
  // Amplitude of a mode as a function of |k|^2; the default is the isotropic
  // (1 + |k|^2)^{-1} spectrum.
  std::function<double(int)> amplitude = [](int n2) { return 1.0 / (1.0 + n2); };
  // Inclusive |k|^2 band; modes must also sit inside the 2/3-rule box.
  int min_norm_sq = 1;
  int max_norm_sq = std::numeric_limits<int>::max();
  bool solenoidal = true;
};

// Hermitian field with random phases. Solenoidal fields put the amplitude
// along k⊥ = (-k2, k1)/|k|; otherwise each component gets an independent
// phase. The mean and Nyquist modes stay zero.
template <typename Scalar>
SpectralField<Scalar> random_field(const GridPtr& grid, Rng& rng, const RandomFieldShape& shape) {
  const WaveGrid& g = *grid;
  const int m = g.points();
  SpectralField<Scalar> f(grid);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const int k1 = g.wavenumber(i), k2 = g.wavenumber(j);
      // Upper half plane; the partner -k is filled by symmetry.
      if (!(k1 > 0 || (k1 == 0 && k2 > 0))) continue;
      if (g.is_nyquist(i, j) || !g.resolved(i, j)) continue;
      const int n2 = g.norm_sq(i, j);
      if (n2 < shape.min_norm_sq || n2 > shape.max_norm_sq) continue;
      const double amp = shape.amplitude(n2);
      std::complex<double> c1, c2;
      if (shape.solenoidal) {
        const std::complex<double> a = std::polar(amp, phase(rng));
        const double kn = std::sqrt(double(n2));
        c1 = a * (-k2 / kn);
        c2 = a * (k1 / kn);
      } else {
        c1 = std::polar(amp, phase(rng));
        c2 = std::polar(amp, phase(rng));
      }
      const int ic = g.conjugate_index(i), jc = g.conjugate_index(j);
      f[0](i, j) = std::complex<Scalar>(c1);
      f[1](i, j) = std::complex<Scalar>(c2);
      f[0](ic, jc) = std::conj(f[0](i, j));
      f[1](ic, jc) = std::conj(f[1](i, j));
    }
  }
  return f;
}

}  // namespace nsda
