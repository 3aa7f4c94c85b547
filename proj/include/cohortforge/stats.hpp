#pragma once

#include <span>

#include "cohortforge/matrix.hpp"

namespace cohortforge {

// Inverse standard normal CDF (Wichura's PPND16), |error| < 1e-15 in the
// interior. Throws numeric_error for p outside (0,1).
double normal_quantile(double p);
double normal_cdf(double x);
double normal_pdf(double x);

double mean(std::span<const double> x);
// ddof = 1 gives the sample variance, ddof = 0 the population variance.
double variance(std::span<const double> x, int ddof = 1);
double stddev(std::span<const double> x, int ddof = 1);
// Population skewness, m3 / m2^(3/2). Zero-variance input returns 0.
double skewness(std::span<const double> x);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

// OLS of y on [1, treat, covariates]; two-sided t-test on the treat
// coefficient. Covariates may be empty (0 columns).
struct OlsResult {
  double estimate = 0.0;
  double se = 0.0;
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};
OlsResult ols_treatment_test(const Vector& y, const std::vector<int>& treat, const Matrix& covariates);

}  // namespace cohortforge
