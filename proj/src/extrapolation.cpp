#include "fracdiff/extrapolation.hpp"

#include <cmath>
#include <limits>

namespace fracdiff {

RichardsonTableau::RichardsonTableau(double ratio, int order_step)
  : ratio_(ratio), order_step_(order_step), err_(std::numeric_limits<double>::infinity())
{}

void RichardsonTableau::push(double sample)
{
  std::vector<double> row;
  row.reserve(prev_.size() + 1);
  row.push_back(sample);

  const double shrink = 1.0 / ratio_;
  double fac = 1.0;
  for (std::size_t j = 1; j <= prev_.size(); ++j) {
    fac *= std::pow(shrink, order_step_);
    const double next = row[j - 1] + (row[j - 1] - prev_[j - 1]) / (fac - 1.0);
    row.push_back(next);
    const double errt = std::max(std::fabs(next - row[j - 1]), std::fabs(next - prev_[j - 1]));
    if (errt <= err_) {
      err_ = errt;
      best_ = next;
    }
  }
  if (prev_.empty()) best_ = sample;
  else if (std::fabs(row.back() - prev_.back()) > 2.0 * err_) diverging_ = true;

  prev_ = std::move(row);
}

LimitValue wynn_epsilon(std::span<const double> seq)
{
  const std::size_t n = seq.size();
  if (n == 0) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity()};
  if (n == 1) return {seq[0], std::numeric_limits<double>::infinity()};

  LimitValue best{seq[n - 1], std::fabs(seq[n - 1] - seq[n - 2])};

  // older = column k-2, cur = column k-1 (column -1 is all zeros)
  std::vector<double> older(n + 1, 0.0);
  std::vector<double> cur(seq.begin(), seq.end());
  const double eps = std::numeric_limits<double>::epsilon();

  for (int k = 1; cur.size() >= 2; ++k) {
    std::vector<double> next(cur.size() - 1);
    bool stalled = false;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double diff = cur[i + 1] - cur[i];
      // A difference at roundoff level means column k-1 has already converged.
      if (std::fabs(diff) <= 8.0 * eps * std::max(std::fabs(cur[i]), std::fabs(cur[i + 1]))
          || diff == 0.0) {
        stalled = true;
        break;
      }
      next[i] = older[i + 1] + 1.0 / diff;
    }
    if (stalled) break;
    if (k % 2 == 0 && next.size() >= 2) {
      const std::size_t m = next.size();
      const double err = std::fabs(next[m - 1] - next[m - 2]);
      if (std::isfinite(next[m - 1]) && err < best.err_estimate) best = {next[m - 1], err};
    }
    older = std::move(cur);
    cur = std::move(next);
  }
  return best;
}

} // namespace fracdiff
