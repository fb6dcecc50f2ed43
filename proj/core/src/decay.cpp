#include "fractsob/decay.hpp"

#include "fractsob/errors.hpp"

#include <cmath>
#include <limits>

namespace fractsob {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw PreconditionError("line fit: length mismatch");
  const int n = static_cast<int>(x.size());
  if (n < 2) throw ParameterError("line fit needs at least 2 points");

  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;

  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw ParameterError("line fit: degenerate abscissae");

  LineFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  if (n > 2) {
    double rss = 0;
    for (int i = 0; i < n; ++i) {
      const double resid = y[i] - fit.intercept - fit.slope * x[i];
      rss += resid * resid;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2) / sxx);
  }
  return fit;
}

DecayFit fit_decay(const std::vector<int>& levels, const std::vector<double>& values,
                   double r) {
  if (levels.size() != values.size())
    throw PreconditionError("decay fit: length mismatch");
  if (!(r > 0.0) || !(r < 1.0)) throw ParameterError("decay fit: r must be in (0,1)");

  const double logr = std::log(r);
  std::vector<double> x, y;
  int dropped = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (values[i] > 0.0 && std::isfinite(values[i])) {
      x.push_back(levels[i] * logr);
      y.push_back(std::log(values[i]));
    } else {
      ++dropped;
    }
  }
  if (x.size() < 3) throw ParameterError("decay fit needs at least 3 positive values");

  const LineFit line = fit_line(x, y);
  DecayFit fit;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.slope_stderr = line.slope_stderr;
  fit.points_used = line.points;
  fit.zeros_dropped = dropped;
  return fit;
}

double lq_norm(const std::vector<double>& values, double q) {
  if (q < 1.0) throw ParameterError("lq norm requires q >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::abs(v), q);
  return std::pow(acc, 1.0 / q);
}

}  // namespace fractsob
