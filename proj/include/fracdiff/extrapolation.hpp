#ifndef FRACDIFF_EXTRAPOLATION_HPP
#define FRACDIFF_EXTRAPOLATION_HPP

#include <span>
#include <vector>

namespace fracdiff {

struct LimitValue {
  double value = 0.0;
  double err_estimate = 0.0;
};

/// Neville-style Richardson tableau for a quotient Q(h) sampled on
/// h_i = h_0 * ratio^i, with error expansion c_1 h^p + c_2 h^{2p} + ...
/// (p = 2 for symmetric quotients, p = 1 for one-sided ones).
///
/// Each push() adds a row and updates the best estimate the way Ridders'
/// method does: the error of an entry is the larger of its distances to its
/// two parents, and the entry with the smallest error wins.
class RichardsonTableau {
public:
  RichardsonTableau(double ratio, int order_step);

  void push(double sample);

  int rows() const noexcept { return static_cast<int>(prev_.size()); }
  double best() const noexcept { return best_; }
  double err_estimate() const noexcept { return err_; }

  /// True once the diagonal has moved away from the best estimate by more
  /// than twice the current error: further rows only add roundoff.
  bool diverging() const noexcept { return diverging_; }

private:
  double ratio_;
  int order_step_;
  std::vector<double> prev_;
  double best_ = 0.0;
  double err_;
  bool diverging_ = false;
};

/// Wynn's epsilon algorithm (Shanks transformation) applied to a sequence,
/// exact for sums of geometric components. Returns the even-column estimate
/// with the smallest successive difference.
LimitValue wynn_epsilon(std::span<const double> seq);

} // namespace fracdiff

#endif // FRACDIFF_EXTRAPOLATION_HPP
