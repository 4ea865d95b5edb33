#pragma once

#include "nsda/errors.hpp"
#include "nsda/wave_grid.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <array>
#include <complex>
#include <memory>
#include <utility>

namespace nsda {

template <typename Scalar>
using ComplexArray = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using GridPtr = std::shared_ptr<const WaveGrid>;

inline GridPtr share(WaveGrid grid) { return std::make_shared<const WaveGrid>(std::move(grid)); }

// Vector field in Fourier space. comp[c](i, j) is the coefficient of component
// c at the mode with FFT indices (i, j), normalised so that
//   u(x) = sum_k coeff(k) exp(2πi k.x / L).
template <typename Scalar>
class SpectralField {
public:
  using Coeffs = ComplexArray<Scalar>;

  SpectralField() = default;
  explicit SpectralField(GridPtr grid)
      : grid_(std::move(grid)),
        comp_{Coeffs::Zero(grid_->points(), grid_->points()),
              Coeffs::Zero(grid_->points(), grid_->points())} {}

  const WaveGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int points() const { return grid_->points(); }

  Coeffs& operator[](int c) { return comp_[c]; }
  const Coeffs& operator[](int c) const { return comp_[c]; }

  bool all_finite() const { return comp_[0].allFinite() && comp_[1].allFinite(); }

  SpectralField& operator+=(const SpectralField& o) {
    check_same_grid(o);
    comp_[0] += o.comp_[0];
    comp_[1] += o.comp_[1];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    check_same_grid(o);
    comp_[0] -= o.comp_[0];
    comp_[1] -= o.comp_[1];
    return *this;
  }
  SpectralField& operator*=(Scalar a) {
    comp_[0] *= a;
    comp_[1] *= a;
    return *this;
  }

  void check_same_grid(const SpectralField& o) const {
    if (!(grid_ == o.grid_ || *grid_ == *o.grid_)) throw ConfigError("fields live on different grids");
  }

  bool operator==(const SpectralField& o) const {
    return *grid_ == *o.grid_ && (comp_[0] == o.comp_[0]).all() && (comp_[1] == o.comp_[1]).all();
  }

private:
  GridPtr grid_;
  std::array<Coeffs, 2> comp_;
};

template <typename Scalar>
SpectralField<Scalar> operator+(SpectralField<Scalar> a, const SpectralField<Scalar>& b) {
  return a += b;
}
template <typename Scalar>
SpectralField<Scalar> operator-(SpectralField<Scalar> a, const SpectralField<Scalar>& b) {
  return a -= b;
}
template <typename Scalar>
SpectralField<Scalar> operator*(Scalar s, SpectralField<Scalar> a) {
  return a *= s;
}

// Real vector field sampled at x_ij = (i L/M, j L/M).
template <typename Scalar>
class PhysicalField {
public:
  using Values = RealArray<Scalar>;

  PhysicalField() = default;
  explicit PhysicalField(GridPtr grid)
      : grid_(std::move(grid)),
        comp_{Values::Zero(grid_->points(), grid_->points()),
              Values::Zero(grid_->points(), grid_->points())} {}

  const WaveGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int points() const { return grid_->points(); }

  Values& operator[](int c) { return comp_[c]; }
  const Values& operator[](int c) const { return comp_[c]; }

private:
  GridPtr grid_;
  std::array<Values, 2> comp_;
};

using SpectralVelocity = SpectralField<double>;
using PhysicalVelocity = PhysicalField<double>;

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  thread_local Eigen::FFT<Scalar> engine = [] {
    Eigen::FFT<Scalar> e;
    e.SetFlag(Eigen::FFT<Scalar>::Unscaled);
    return e;
  }();
  return engine;
}

// Unnormalised 2D transform in place; sign < 0 is exp(-i...), sign > 0 exp(+i...).
template <typename Scalar>
void fft2(ComplexArray<Scalar>& a, int sign) {
  auto& fft = fft_engine<Scalar>();
  const Eigen::Index n = a.rows();
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> in(n), out(n);
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      in = a.col(c).matrix();
      if (sign < 0) {
        fft.fwd(out, in);
      } else {
        fft.inv(out, in);
      }
      a.col(c) = out.array();
    }
    a.transposeInPlace();
  }
}

// Splits the packed transform Z = FFT(a + i b) of two real arrays into their
// individual (exactly Hermitian) transforms.
template <typename Scalar>
void unpack_pair(const WaveGrid& g, const ComplexArray<Scalar>& z, ComplexArray<Scalar>& a,
                 ComplexArray<Scalar>& b) {
  const int m = g.points();
  a.resize(m, m);
  b.resize(m, m);
  const std::complex<Scalar> half(Scalar(0.5), 0);
  const std::complex<Scalar> minus_half_i(0, Scalar(-0.5));
  for (int j = 0; j < m; ++j) {
    const int jc = g.conjugate_index(j);
    for (int i = 0; i < m; ++i) {
      const std::complex<Scalar> zk = z(i, j);
      const std::complex<Scalar> zc = std::conj(z(g.conjugate_index(i), jc));
      a(i, j) = half * (zk + zc);
      b(i, j) = minus_half_i * (zk - zc);
    }
  }
}

}  // namespace detail

// Samples of the field on the physical grid. Both components are recovered
// from one complex transform.
template <typename Scalar>
PhysicalField<Scalar> to_physical(const SpectralField<Scalar>& f) {
  ComplexArray<Scalar> z = f[0] + std::complex<Scalar>(0, 1) * f[1];
  detail::fft2(z, +1);
  PhysicalField<Scalar> out(f.grid_ptr());
  out[0] = z.real();
  out[1] = z.imag();
  return out;
}

// Scalar helper: physical samples of two spectral scalars packed in one transform.
template <typename Scalar>
std::pair<RealArray<Scalar>, RealArray<Scalar>> to_physical_pair(const ComplexArray<Scalar>& a,
                                                                  const ComplexArray<Scalar>& b) {
  ComplexArray<Scalar> z = a + std::complex<Scalar>(0, 1) * b;
  detail::fft2(z, +1);
  return {z.real(), z.imag()};
}

template <typename Scalar>
std::pair<ComplexArray<Scalar>, ComplexArray<Scalar>> to_spectral_pair(const WaveGrid& g,
                                                                        const RealArray<Scalar>& a,
                                                                        const RealArray<Scalar>& b) {
  ComplexArray<Scalar> z(a.rows(), a.cols());
  z.real() = a;
  z.imag() = b;
  detail::fft2(z, -1);
  z /= Scalar(g.points()) * Scalar(g.points());
  std::pair<ComplexArray<Scalar>, ComplexArray<Scalar>> out;
  detail::unpack_pair(g, z, out.first, out.second);
  return out;
}

template <typename Scalar>
SpectralField<Scalar> to_spectral(const PhysicalField<Scalar>& f) {
  SpectralField<Scalar> out(f.grid_ptr());
  auto [a, b] = to_spectral_pair<Scalar>(f.grid(), f[0], f[1]);
  out[0] = std::move(a);
  out[1] = std::move(b);
  return out;
}

// Hermitian defect max_k |coeff(-k) - conj(coeff(k))|, ignoring Nyquist modes.
template <typename Scalar>
Scalar hermitian_defect(const SpectralField<Scalar>& f) {
  const WaveGrid& g = f.grid();
  Scalar worst = 0;
  for (int c = 0; c < 2; ++c) {
    for (int j = 0; j < g.points(); ++j) {
      for (int i = 0; i < g.points(); ++i) {
        if (g.is_nyquist(i, j)) continue;
        const auto d = f[c](g.conjugate_index(i), g.conjugate_index(j)) - std::conj(f[c](i, j));
        worst = std::max(worst, std::abs(d));
      }
    }
  }
  return worst;
}

}  // namespace nsda
