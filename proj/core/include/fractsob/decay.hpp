#pragma once

#include <vector>

namespace fractsob {

// Ordinary least squares y ~ intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int points = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Exponent fit: log(value_m) against m*log(r), so value ~ C r^{a m} gives
// slope a. Non-positive values are dropped (and counted); fewer than 3
// usable points is an error.
struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int points_used = 0;
  int zeros_dropped = 0;
};

DecayFit fit_decay(const std::vector<int>& levels, const std::vector<double>& values,
                   double r);

// Unweighted counting norm over the value vector; q in [1, inf].
double lq_norm(const std::vector<double>& values, double q);

}  // namespace fractsob
