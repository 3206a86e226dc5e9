#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace prreg {

inline constexpr double kDensityFloor = 1e-300;

// Discretization of the mixing-scale support [u_min, u_max] with trapezoid
// quadrature weights. Immutable after construction; shared by reference
// between the densities that live on it.
class ScaleGrid {
 public:
  ScaleGrid(double u_min, double u_max, std::vector<double> points);

  // Uniformly spaced grid with m points, endpoints included.
  static std::shared_ptr<const ScaleGrid> uniform(double u_min, double u_max,
                                                  std::size_t m);

  double u_min() const { return u_min_; }
  double u_max() const { return u_max_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& quadrature_weights() const { return weights_; }

  // Trapezoid quadrature of grid-sampled values.
  double integrate(std::span<const double> values) const;

 private:
  double u_min_;
  double u_max_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const ScaleGrid>;

// Nonnegative density values on a ScaleGrid, quadrature-normalized to 1.
class MixingDensity {
 public:
  MixingDensity(GridPtr grid, std::vector<double> values);

  static MixingDensity uniform(GridPtr grid);
  // Spike: all mass at grid point `index`, quadrature-normalized.
  static MixingDensity spike(GridPtr grid, std::size_t index);
  // Divides by the quadrature integral before constructing.
  static MixingDensity normalized(GridPtr grid, std::vector<double> values);

  const ScaleGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double integral() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

// N(r | 0, u^2) density; underflow returns 0.0, never NaN.
double normal_kernel(double r, double u);

// kernel(r, u_m) for every grid point, bitwise equal to normal_kernel calls.
void normal_kernel_row(const ScaleGrid& grid, double r, std::span<double> out);

// Quadrature approximation of the mixture density f(r) = integral of
// normal_kernel(r,u) psi(u) du, floored at `floor` to protect division.
double mixture_density(double r, const MixingDensity& psi,
                       double floor = kDensityFloor);

// One recursive Bayes update with step weight w in (0,1):
//   psi'(u) = (1-w) psi(u) + w k(r,u) psi(u) / f(r),
// re-normalized to unit quadrature integral.
MixingDensity pr_step(const MixingDensity& psi, double r, double w);

namespace detail {
void check_step_weight(double w);
}

// Same update with an arbitrary kernel k(r, u); used to test degenerate
// kernels. pr_step forwards here with the normal kernel.
template <typename Kernel>
MixingDensity pr_step_with_kernel(const MixingDensity& psi, double r, double w,
                                  Kernel&& kernel) {
  detail::check_step_weight(w);
  const ScaleGrid& g = psi.grid();
  const std::size_t m = g.size();
  std::vector<double> kern(m);
  for (std::size_t i = 0; i < m; ++i) kern[i] = kernel(r, g.points()[i]);
  const auto& qw = g.quadrature_weights();
  const auto& psi_v = psi.values();
  double f = 0.0;
  for (std::size_t i = 0; i < m; ++i) f += qw[i] * kern[i] * psi_v[i];
  if (f < kDensityFloor) f = kDensityFloor;
  std::vector<double> next(m);
  for (std::size_t i = 0; i < m; ++i)
    next[i] = (1.0 - w) * psi_v[i] + w * kern[i] * psi_v[i] / f;
  return MixingDensity::normalized(psi.grid_ptr(), std::move(next));
}

}  // namespace prreg
