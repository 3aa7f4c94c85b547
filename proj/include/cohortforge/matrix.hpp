#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace cohortforge {

// Row-major so that sample rows are contiguous in the KDE / hull inner loops.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline std::span<const double> row_span(const Matrix& m, Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

// Fixed-block parallel reduction. Every block is summed serially in index
// order and block results are combined in index order, so the result is
// bitwise identical for any thread count (including 1).
inline constexpr Index kSumBlock = 1024;

template <class F>
double blocked_sum(Index n, F&& f) {
  if (n <= 0) return 0.0;
  const Index nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
  for (Index b = 0; b < nblocks; ++b) {
    const Index lo = b * kSumBlock;
    const Index hi = std::min(n, lo + kSumBlock);
    double s = 0.0;
    for (Index i = lo; i < hi; ++i) s += f(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

// Same scheme for a (sum, sum of squares) pair in one pass.
template <class F>
std::pair<double, double> blocked_sum2(Index n, F&& f) {
  if (n <= 0) return {0.0, 0.0};
  const Index nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> p1(static_cast<std::size_t>(nblocks), 0.0);
  std::vector<double> p2(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
  for (Index b = 0; b < nblocks; ++b) {
    const Index lo = b * kSumBlock;
    const Index hi = std::min(n, lo + kSumBlock);
    double s = 0.0, s2 = 0.0;
    for (Index i = lo; i < hi; ++i) {
      const double v = f(i);
      s += v;
      s2 += v * v;
    }
    p1[static_cast<std::size_t>(b)] = s;
    p2[static_cast<std::size_t>(b)] = s2;
  }
  double t1 = 0.0, t2 = 0.0;
  for (std::size_t b = 0; b < p1.size(); ++b) {
    t1 += p1[b];
    t2 += p2[b];
  }
  return {t1, t2};
}

// Stack matrices with identical column counts, top to bottom.
inline Matrix vstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

inline Matrix select_rows(const Matrix& m, std::span<const std::int64_t> idx) {
  Matrix out(static_cast<Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Index>(i)) = m.row(idx[i]);
  return out;
}

}  // namespace cohortforge
