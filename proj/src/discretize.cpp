#include "hothand/discretize.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hothand {

Grid::Grid(std::size_t m, double b0, double bm) {
  if (m < 2) throw std::domain_error("build_grid: m must be >= 2");
  if (!std::isfinite(b0) || !std::isfinite(bm) || !(b0 < bm)) {
    throw std::domain_error("build_grid: bounds must satisfy b0 < bm");
  }
  step_ = (bm - b0) / static_cast<double>(m);
  // Built around the centre so a grid symmetric about 0 is exactly symmetric.
  const double centre = 0.5 * (b0 + bm);
  const double half = 0.5 * (bm - b0);
  const double md = static_cast<double>(m);
  boundaries_.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    boundaries_[i] = centre + half * ((2.0 * static_cast<double>(i) - md) / md);
  }
  boundaries_[0] = b0;
  boundaries_[m] = bm;
  midpoints_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    midpoints_[i] = 0.5 * (boundaries_[i] + boundaries_[i + 1]);
  }
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0); }

double normal_pdf(double z) {
  constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

namespace {

// Upper tail Q(z) = 1 - Phi(z).
double normal_sf(double z) { return 0.5 * std::erfc(z * std::numbers::sqrt2 / 2.0); }

void check_sizes(const Grid& grid, std::size_t n, const char* who) {
  if (n != grid.size()) {
    throw std::domain_error(std::string(who) + ": output size does not match grid");
  }
}

}  // namespace

void interval_masses(const Grid& grid, double mean, double sd, std::span<double> out) {
  if (!(sd > 0.0) || !std::isfinite(sd)) throw std::domain_error("scale must be > 0");
  if (!std::isfinite(mean)) throw std::domain_error("location must be finite");
  check_sizes(grid, out.size(), "interval_masses");
  const auto& b = grid.boundaries();
  const std::size_t m = grid.size();
  // Interior boundaries only; the edge intervals extend to -inf / +inf.
  for (std::size_t j = 0; j < m; ++j) {
    const bool open_below = j == 0;
    const bool open_above = j + 1 == m;
    const double lo = open_below ? -INFINITY : (b[j] - mean) / sd;
    const double hi = open_above ? INFINITY : (b[j + 1] - mean) / sd;
    if (lo >= 0.0) {
      out[j] = normal_sf(lo) - (open_above ? 0.0 : normal_sf(hi));
    } else {
      out[j] = (open_above ? 1.0 : normal_cdf(hi)) - (open_below ? 0.0 : normal_cdf(lo));
    }
  }
}

std::vector<double> interval_masses(const Grid& grid, double mean, double sd) {
  std::vector<double> out(grid.size());
  interval_masses(grid, mean, sd, out);
  return out;
}

void interval_mass_derivatives(const Grid& grid, double mean, double sd,
                               std::span<double> d_mean, std::span<double> d_sd) {
  if (!(sd > 0.0)) throw std::domain_error("scale must be > 0");
  check_sizes(grid, d_mean.size(), "interval_mass_derivatives");
  check_sizes(grid, d_sd.size(), "interval_mass_derivatives");
  const auto& b = grid.boundaries();
  const std::size_t m = grid.size();
  // f(z) and z f(z) at each interior boundary; both vanish at +-inf.
  double f_lo = 0.0;
  double zf_lo = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double f_hi = 0.0;
    double zf_hi = 0.0;
    if (j + 1 < m) {
      const double z = (b[j + 1] - mean) / sd;
      f_hi = normal_pdf(z);
      zf_hi = z * f_hi;
    }
    d_mean[j] = -(f_hi - f_lo) / sd;
    d_sd[j] = -(zf_hi - zf_lo) / sd;
    f_lo = f_hi;
    zf_lo = zf_hi;
  }
}

std::vector<double> initial_vector(const Grid& grid, double mu_delta, double sigma_delta) {
  if (!(sigma_delta > 0.0)) throw std::domain_error("initial_vector: sigma_delta must be > 0");
  return interval_masses(grid, mu_delta, sigma_delta);
}

TransitionMatrix transition_matrix(const Grid& grid, double phi, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("transition_matrix: sigma must be > 0");
  if (!std::isfinite(phi)) throw std::domain_error("transition_matrix: phi must be finite");
  const std::size_t m = grid.size();
  TransitionMatrix gamma(m);
  for (std::size_t i = 0; i < m; ++i) {
    interval_masses(grid, phi * grid.midpoints()[i], sigma, gamma.row(i));
  }
  return gamma;
}

TransitionPair par_transition_pair(const Grid& grid, double phi_w, double phi_a, double sigma_w,
                                   double sigma_a) {
  return {transition_matrix(grid, phi_w, sigma_w), transition_matrix(grid, phi_a, sigma_a)};
}

}  // namespace hothand
