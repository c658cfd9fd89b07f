#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace isexplore {

enum class FitModel { Linear, Quadratic };

struct FitResult {
  // Polynomial coefficients in ascending powers of x.
  std::vector<double> coefficients;
  double slope = 0.0;      // coefficient of x
  double intercept = 0.0;  // constant term
  double r_squared = 0.0;
  // Two-sided t-test of the highest-degree coefficient (df = n - 2 or n - 3).
  double p_value = 1.0;
  double t_statistic = 0.0;
  std::size_t n = 0;
};

// Least-squares fit. Throws TooFewPoints, ZeroVariance.
FitResult fit_quality_relation(std::span<const double> x, std::span<const double> y, FitModel model);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Exact two-sided binomial test: total probability of outcomes no more
// likely than `successes` under Binomial(trials, p).
double binomial_two_sided_p(std::size_t successes, std::size_t trials, double p);

}  // namespace isexplore
