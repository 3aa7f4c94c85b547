#include "cohortforge/stats.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "cohortforge/error.hpp"

namespace cohortforge {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw numeric_error("normal_quantile: p must be in (0,1)");
  // Wichura (1988), algorithm AS 241, PPND16.
  const double q = p - 0.5;
  double r;
  if (std::fabs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r + 6.7265770927008700853e4) * r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r + 3.9307895800092710610e4) * r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r + 2.41780725177450611770e-1) * r +
               1.27045825245236838258e0) *
                  r +
              3.64784832476320460504e0) *
                 r +
             5.76949722146069140550e0) *
                r +
            4.63033784615654529590e0) *
               r +
           1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r + 1.51986665636164571966e-2) * r +
               1.48103976427480074590e-1) *
                  r +
              6.89767334985100004550e-1) *
                 r +
             1.67638483018380384940e0) *
                r +
            2.05319162663775882187e0) *
               r +
           1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 1.24266094738807843860e-3) * r +
               2.65321895265761230930e-2) *
                  r +
              2.96560571828504891230e-1) *
                 r +
             1.78482653991729133580e0) *
                r +
            5.46378491116411436990e0) *
               r +
           6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r + 1.84631831751005468180e-5) * r +
               7.86869131145613259100e-4) *
                  r +
              1.48753612908506148525e-2) *
                 r +
             1.36929880922735805310e-1) *
                r +
            5.99832206555887937690e-1) *
               r +
           1.0);
  }
  return q < 0.0 ? -val : val;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014327;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x, int ddof) {
  const auto n = static_cast<double>(x.size());
  if (n <= ddof) return 0.0;
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / (n - ddof);
}

double stddev(std::span<const double> x, int ddof) { return std::sqrt(variance(x, ddof)); }

double skewness(std::span<const double> x) {
  const auto n = static_cast<double>(x.size());
  if (n < 2) return 0.0;
  const double m = mean(x);
  double m2 = 0.0, m3 = 0.0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (m2 <= 0.0) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
  constexpr int max_iter = 300;
  constexpr double eps = 3e-15;
  constexpr double fpmin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw numeric_error("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw numeric_error("incomplete_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (df <= 0.0) throw numeric_error("student_t_cdf: df must be positive");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  if (na < 2 || nb < 2) throw data_error("welch_t_test: each sample needs at least 2 observations");
  const double ma = mean(a), mb = mean(b);
  const double va = variance(a, 1) / na;
  const double vb = variance(b, 1) / nb;
  WelchResult r;
  const double se2 = va + vb;
  if (se2 <= 0.0) {
    r.t = (ma == mb) ? 0.0 : std::numeric_limits<double>::infinity() * (ma > mb ? 1.0 : -1.0);
    r.df = na + nb - 2.0;
    r.p = (ma == mb) ? 1.0 : 0.0;
    return r;
  }
  r.t = (ma - mb) / std::sqrt(se2);
  r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p = 2.0 * (1.0 - student_t_cdf(std::fabs(r.t), r.df));
  return r;
}

OlsResult ols_treatment_test(const Vector& y, const std::vector<int>& treat, const Matrix& covariates) {
  const Index n = y.size();
  if (static_cast<Index>(treat.size()) != n) throw data_error("ols_treatment_test: treat length mismatch");
  if (covariates.rows() != 0 && covariates.rows() != n) throw data_error("ols_treatment_test: covariate rows mismatch");
  const Index q = covariates.rows() == 0 ? 0 : covariates.cols();
  const Index p = 2 + q;
  if (n <= p) throw data_error("ols_treatment_test: not enough observations");
  Eigen::MatrixXd X(n, p);
  X.col(0).setOnes();
  for (Index i = 0; i < n; ++i) X(i, 1) = treat[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
  for (Index j = 0; j < q; ++j) X.col(2 + j) = covariates.col(j);
  const Eigen::MatrixXd xtx = X.transpose() * X;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
  if (ldlt.info() != Eigen::Success) throw numeric_error("ols_treatment_test: singular design");
  const Eigen::VectorXd beta = ldlt.solve(X.transpose() * y);
  const Eigen::VectorXd resid = y - X * beta;
  OlsResult r;
  r.df = static_cast<double>(n - p);
  const double s2 = resid.squaredNorm() / r.df;
  const Eigen::MatrixXd xtx_inv = ldlt.solve(Eigen::MatrixXd::Identity(p, p));
  r.estimate = beta(1);
  r.se = std::sqrt(s2 * xtx_inv(1, 1));
  if (r.se <= 0.0) {
    r.t = 0.0;
    r.p = 1.0;
    return r;
  }
  r.t = r.estimate / r.se;
  r.p = 2.0 * (1.0 - student_t_cdf(std::fabs(r.t), r.df));
  return r;
}

}  // namespace cohortforge
