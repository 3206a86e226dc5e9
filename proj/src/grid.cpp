#include "prreg/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace prreg {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
}

ScaleGrid::ScaleGrid(double u_min, double u_max, std::vector<double> points)
    : u_min_(u_min), u_max_(u_max), points_(std::move(points)) {
  if (!(u_min > 0.0) || !std::isfinite(u_min))
    throw std::domain_error("ScaleGrid: u_min must be positive");
  if (!(u_max > u_min) || !std::isfinite(u_max))
    throw std::domain_error("ScaleGrid: u_max must exceed u_min");
  const std::size_t m = points_.size();
  if (m < 2) throw std::domain_error("ScaleGrid: need at least 2 points");
  if (points_.front() != u_min || points_.back() != u_max)
    throw std::domain_error("ScaleGrid: endpoints must equal u_min/u_max");
  for (std::size_t i = 1; i < m; ++i)
    if (!(points_[i] > points_[i - 1]))
      throw std::domain_error("ScaleGrid: points must be strictly increasing");

  // Trapezoid weights; their sum telescopes to u_max - u_min.
  weights_.assign(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double half = 0.5 * (points_[i + 1] - points_[i]);
    weights_[i] += half;
    weights_[i + 1] += half;
  }
}

std::shared_ptr<const ScaleGrid> ScaleGrid::uniform(double u_min, double u_max,
                                                    std::size_t m) {
  if (m < 2) throw std::domain_error("ScaleGrid: need at least 2 points");
  std::vector<double> pts(m);
  const double h = (u_max - u_min) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i)
    pts[i] = u_min + static_cast<double>(i) * h;
  pts.front() = u_min;
  pts.back() = u_max;
  return std::make_shared<const ScaleGrid>(u_min, u_max, std::move(pts));
}

double ScaleGrid::integrate(std::span<const double> values) const {
  if (values.size() != weights_.size())
    throw std::domain_error("ScaleGrid::integrate: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights_[i] * values[i];
  return s;
}

MixingDensity::MixingDensity(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::domain_error("MixingDensity: null grid");
  if (values_.size() != grid_->size())
    throw std::domain_error("MixingDensity: values/grid size mismatch");
  for (double v : values_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::domain_error("MixingDensity: values must be finite and >= 0");
  const double total = grid_->integrate(values_);
  if (std::abs(total - 1.0) > 1e-10)
    throw std::domain_error("MixingDensity: quadrature integral != 1");
}

MixingDensity MixingDensity::uniform(GridPtr grid) {
  const double c = 1.0 / (grid->u_max() - grid->u_min());
  return MixingDensity(grid, std::vector<double>(grid->size(), c));
}

MixingDensity MixingDensity::spike(GridPtr grid, std::size_t index) {
  if (index >= grid->size())
    throw std::domain_error("MixingDensity::spike: index out of range");
  std::vector<double> v(grid->size(), 0.0);
  v[index] = 1.0 / grid->quadrature_weights()[index];
  return MixingDensity(std::move(grid), std::move(v));
}

MixingDensity MixingDensity::normalized(GridPtr grid,
                                        std::vector<double> values) {
  double total = 0.0;
  const auto& qw = grid->quadrature_weights();
  for (std::size_t i = 0; i < values.size(); ++i) total += qw[i] * values[i];
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::domain_error("MixingDensity: cannot normalize, integral <= 0");
  for (double& v : values) v /= total;
  return MixingDensity(std::move(grid), std::move(values));
}

double MixingDensity::integral() const { return grid_->integrate(values_); }

double normal_kernel(double r, double u) {
  if (!std::isfinite(r)) throw std::domain_error("normal_kernel: r not finite");
  if (!(u > 0.0) || !std::isfinite(u))
    throw std::domain_error("normal_kernel: u must be positive");
  const double z = r / u;
  return kInvSqrt2Pi / u * std::exp(-0.5 * z * z);
}

void normal_kernel_row(const ScaleGrid& grid, double r, std::span<double> out) {
  if (!std::isfinite(r)) throw std::domain_error("normal_kernel: r not finite");
  if (out.size() != grid.size())
    throw std::domain_error("normal_kernel_row: size mismatch");
  const auto& u = grid.points();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double z = r / u[i];
    out[i] = kInvSqrt2Pi / u[i] * std::exp(-0.5 * z * z);
  }
}

double mixture_density(double r, const MixingDensity& psi, double floor) {
  const ScaleGrid& g = psi.grid();
  std::vector<double> kern(g.size());
  normal_kernel_row(g, r, kern);
  const auto& qw = g.quadrature_weights();
  const auto& v = psi.values();
  double f = 0.0;
  for (std::size_t i = 0; i < kern.size(); ++i) f += qw[i] * kern[i] * v[i];
  return f < floor ? floor : f;
}

namespace detail {
void check_step_weight(double w) {
  if (!(w > 0.0) || !(w < 1.0))
    throw std::domain_error("pr_step: weight must lie in (0,1)");
}
}  // namespace detail

MixingDensity pr_step(const MixingDensity& psi, double r, double w) {
  return pr_step_with_kernel(psi, r, w,
                             [](double rr, double uu) { return normal_kernel(rr, uu); });
}

}  // namespace prreg
