#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rwre {

// Compensated (Kahan) summation; keeps parallel reductions reproducible to
// the last bit once the accumulation order is fixed.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Mean and standard error of a sample, accumulated with compensated sums.
struct SampleStats {
  KahanSum sum;
  KahanSum sum_sq;
  std::size_t n = 0;

  void add(double x) {
    sum.add(x);
    sum_sq.add(x * x);
    ++n;
  }
  double mean() const { return n ? sum.value() / static_cast<double>(n) : 0.0; }
  double variance() const {
    if (n < 2) return 0.0;
    double m = mean();
    double v = (sum_sq.value() - static_cast<double>(n) * m * m) /
               static_cast<double>(n - 1);
    return v > 0.0 ? v : 0.0;
  }
  double stderror() const {
    return n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
  }
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for a binomial proportion.
inline Interval wilson_ci(std::int64_t successes, std::int64_t trials,
                          double z = 1.959963984540054) {
  if (trials <= 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
inline LineFit fit_line(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 matched points");
  std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = ys[i] - (f.intercept + f.slope * xs[i]);
      ss_res += r * r;
    }
    f.slope_stderr = std::sqrt(ss_res / (static_cast<double>(n - 2) * sxx));
  }
  return f;
}

// Log-log slope of y against x (power-law exponent fit).
inline LineFit fit_loglog(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0.0 || ys[i] <= 0.0)
      throw std::invalid_argument("fit_loglog: nonpositive data");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  return fit_line(lx, ly);
}

// Upper critical value of the chi-square distribution via the
// Wilson-Hilferty cube approximation; z is the standard normal quantile.
inline double chi_square_critical(int df, double z) {
  double d = static_cast<double>(df);
  double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
  return d * t * t * t;
}

}  // namespace rwre
