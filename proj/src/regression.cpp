#include "isexplore/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "isexplore/errors.hpp"

namespace isexplore {

namespace {

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double two_sided_p(double coef, double se, double df) {
  if (se == 0.0) return coef == 0.0 ? 1.0 : 0.0;
  return student_t_two_sided_p(coef / se, df);
}

void check_inputs(std::span<const double> x, std::span<const double> y, std::size_t min_points) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::TooFewPoints, "x has " + std::to_string(x.size()) + " points, y has " +
                                             std::to_string(y.size()));
  }
  if (x.size() < min_points) {
    throw Error(ErrorCode::TooFewPoints,
                "need at least " + std::to_string(min_points) + " points, got " + std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw Error(ErrorCode::ValidationError, "non-finite sample");
  }
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

FitResult fit_linear(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (syy == 0.0) throw Error(ErrorCode::ZeroVariance, "y is constant");
  if (sxx == 0.0) throw Error(ErrorCode::ZeroVariance, "x is constant");

  FitResult r;
  r.n = n;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.coefficients = {r.intercept, r.slope};
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (r.intercept + r.slope * x[i]);
    ss_res += e * e;
  }
  r.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  const double df = static_cast<double>(n - 2);
  const double se = std::sqrt(ss_res / df / sxx);
  r.t_statistic = se == 0.0 ? std::copysign(std::numeric_limits<double>::infinity(), r.slope) : r.slope / se;
  r.p_value = two_sided_p(r.slope, se, df);
  return r;
}

FitResult fit_quadratic(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (syy == 0.0) throw Error(ErrorCode::ZeroVariance, "y is constant");
  if (sxx == 0.0) throw Error(ErrorCode::ZeroVariance, "x is constant");

  // Fit on z = (x - mx) / sx for conditioning, then map back to powers of x.
  const double sx = std::sqrt(sxx / static_cast<double>(n));
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x[i] - mx) / sx;
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = z;
    design(static_cast<Eigen::Index>(i), 2) = z * z;
    rhs(static_cast<Eigen::Index>(i)) = y[i];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw Error(ErrorCode::ZeroVariance, "x has fewer than 3 distinct values");
  const Eigen::Vector3d b = qr.solve(rhs);
  const Eigen::VectorXd resid = rhs - design * b;
  const double ss_res = resid.squaredNorm();

  FitResult r;
  r.n = n;
  const double c2 = b(2) / (sx * sx);
  const double c1 = b(1) / sx - 2.0 * b(2) * mx / (sx * sx);
  const double c0 = b(0) - b(1) * mx / sx + b(2) * mx * mx / (sx * sx);
  r.coefficients = {c0, c1, c2};
  r.intercept = c0;
  r.slope = c1;
  r.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);

  const double df = static_cast<double>(n - 3);
  const Eigen::Matrix3d gram = design.transpose() * design;
  const double var_b2 = ss_res / df * gram.inverse()(2, 2);
  const double se = std::sqrt(std::max(0.0, var_b2)) / (sx * sx);
  r.t_statistic = se == 0.0 ? std::copysign(std::numeric_limits<double>::infinity(), c2) : c2 / se;
  r.p_value = two_sided_p(c2, se, df);
  return r;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::BadConfig, "incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorCode::BadConfig, "degrees of freedom must be positive");
  if (std::isnan(t)) throw Error(ErrorCode::BadConfig, "t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  return std::clamp(regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t)), 0.0, 1.0);
}

double binomial_two_sided_p(std::size_t successes, std::size_t trials, double p) {
  if (successes > trials || !(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadConfig, "bad binomial arguments");
  if (p == 0.0) return successes == 0 ? 1.0 : 0.0;
  if (p == 1.0) return successes == trials ? 1.0 : 0.0;
  const double n = static_cast<double>(trials);
  auto log_pmf = [&](std::size_t k) {
    const double kd = static_cast<double>(k);
    return std::lgamma(n + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0) + kd * std::log(p) +
           (n - kd) * std::log1p(-p);
  };
  const double observed = log_pmf(successes);
  // Relative slack absorbs rounding between equally likely outcomes.
  const double cutoff = observed + 1e-7;
  double total = 0.0;
  for (std::size_t k = 0; k <= trials; ++k) {
    const double lp = log_pmf(k);
    if (lp <= cutoff) total += std::exp(lp);
  }
  return std::min(1.0, total);
}

FitResult fit_quality_relation(std::span<const double> x, std::span<const double> y, FitModel model) {
  if (model == FitModel::Linear) {
    check_inputs(x, y, 3);
    return fit_linear(x, y);
  }
  check_inputs(x, y, 4);
  return fit_quadratic(x, y);
}

}  // namespace isexplore
