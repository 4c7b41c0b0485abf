#include <algorithm>
#include <cmath>

#include "lexopt/error.hpp"
#include "lexopt/mc/listener_mc.hpp"

namespace lexopt::mc {

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw ValidationError("fit_line: xs and ys differ in length");
  if (xs.size() < 2) throw ValidationError("fit_line: need at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw ValidationError("fit_line: xs are constant");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (!(syy > 0.0)) {
    fit.r_squared = 1.0;
    return fit;
  }
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

}  // namespace lexopt::mc
