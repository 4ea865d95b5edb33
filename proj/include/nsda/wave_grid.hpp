#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace nsda {

// Fourier lattice of an L-periodic square with M x M physical points.
//
// Modes are stored in FFT order: index i in [0, M) carries the signed
// wavenumber i for i < M/2 and i - M otherwise, so the Nyquist index M/2 maps
// to -M/2. The Stokes eigenvalue of mode k is (2π/L)^2 |k|^2.
class WaveGrid {
public:
  WaveGrid(double length, int points);

  double length() const { return length_; }
  int points() const { return points_; }
  int dealias_radius() const { return points_ / 3; }

  // (2π/L)^2, the smallest nonzero Stokes eigenvalue.
  double lambda1() const { return lambda1_; }
  // 2π/L.
  double base_wavenumber() const { return base_; }

  int wavenumber(int index) const { return index < points_ / 2 ? index : index - points_; }
  int norm_sq(int i, int j) const { return norm_sq_(i, j); }
  double lambda(int i, int j) const { return lambda1_ * norm_sq_(i, j); }
  bool is_nyquist(int i, int j) const { return i == points_ / 2 || j == points_ / 2; }
  // Inside the 2/3-rule box |k|_inf <= floor(M/3).
  bool resolved(int i, int j) const {
    const int r = dealias_radius();
    return std::abs(wavenumber(i)) <= r && std::abs(wavenumber(j)) <= r;
  }
  // FFT index of -k.
  int conjugate_index(int index) const { return index == 0 ? 0 : points_ - index; }

  const Eigen::ArrayXXi& norm_sq_table() const { return norm_sq_; }
  const Eigen::ArrayXXd& lambda_table() const { return lambda_; }

  bool operator==(const WaveGrid& other) const {
    return length_ == other.length_ && points_ == other.points_;
  }

private:
  double length_;
  int points_;
  double base_;
  double lambda1_;
  Eigen::ArrayXXi norm_sq_;
  Eigen::ArrayXXd lambda_;
};

// Throws ConfigError unless M >= 8, M even and L > 0.
WaveGrid make_grid(double length, int points);

// Spectral shell {k : |k|^2 <= kappa^2}. lambda_next is the first Stokes
// eigenvalue strictly outside the shell; lambda_top the largest one inside
// (0 for an empty shell). Both are taken over the whole integer lattice.
struct ShellCutoff {
  double kappa = 0.0;
  std::int64_t max_norm_sq = -1;
  double lambda_top = 0.0;
  double lambda_next = 0.0;

  bool contains(int norm_sq) const { return norm_sq <= max_norm_sq; }
};

ShellCutoff make_cutoff(double kappa, double lambda1);
inline ShellCutoff make_cutoff(const WaveGrid& grid, double kappa) {
  return make_cutoff(kappa, grid.lambda1());
}

// Smallest lattice norm |k|^2 strictly above n (sums of two squares).
std::int64_t next_lattice_norm(std::int64_t n);
// Largest lattice norm |k|^2 <= n, n >= 0.
std::int64_t top_lattice_norm(std::int64_t n);

// [1 + log(lambda_N / lambda1)]^{1/2} with lambda_N = cut.lambda_top.
// Throws ConfigError for a shell that holds no nonzero mode.
double log_factor(const ShellCutoff& cut, double lambda1);

}  // namespace nsda
