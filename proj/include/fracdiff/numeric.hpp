#ifndef FRACDIFF_NUMERIC_HPP
#define FRACDIFF_NUMERIC_HPP

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "fracdiff/expr.hpp"

namespace fracdiff {

using RealFunction = std::function<double(double)>;

/// Fractional order alpha in (n, n+1], stored as integer part n and residue
/// beta in (0, 1] so that alpha = n + beta.
class Alpha {
public:
  /// Throws InvalidArgument unless 0 < beta <= 1.
  Alpha(unsigned n, double beta);

  /// Splits a positive order: 0.5 -> (0, 0.5), 1 -> (0, 1), 1.5 -> (1, 0.5), 2 -> (1, 1).
  static Alpha from_total(double alpha);

  unsigned n() const noexcept { return n_; }
  double beta() const noexcept { return beta_; }
  double total() const noexcept { return static_cast<double>(n_) + beta_; }

private:
  unsigned n_;
  double beta_;
};

enum class QuotientMode {
  symmetric, ///< (f(t e^{+h}) - f(t e^{-h})) / 2eps, error in eps^2
  forward    ///< (f(t e^{+h}) - f(t)) / eps, the defining quotient literally
};

/// Step schedule for the limit estimators: eps_i = eps0 * ratio^i.
struct LimitConfig {
  /// Initial step; when unset, 1e-2 * t^beta so that the first relative
  /// perturbation of t is 1%.
  std::optional<double> eps0;
  double ratio = 0.5;
  int max_levels = 12;
  double target_rtol = 1e-8;
  QuotientMode mode = QuotientMode::symmetric;
};

struct DerivEstimate {
  double value = 0.0;
  double err_estimate = 0.0;
  int levels_used = 0;
  bool converged = false;
  /// max over used steps of |f(t e^{eps t^-beta}) - f(t)|.
  double continuity_residual = 0.0;
  /// The same quantity per level, together with the step that produced it.
  std::vector<double> continuity_by_level;
  std::vector<double> steps;
};

/// Order k of the truncated exponential e_k(x) = sum_{i<=k} x^i / i!;
/// `infinite()` selects exp itself.
class TruncationOrder {
public:
  static TruncationOrder finite(unsigned k) { return TruncationOrder(k, false); }
  static TruncationOrder infinite() { return TruncationOrder(0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  unsigned k() const noexcept { return k_; }

  friend bool operator==(TruncationOrder, TruncationOrder) = default;

private:
  TruncationOrder(unsigned k, bool inf) : k_(k), infinite_(inf) {}
  unsigned k_;
  bool infinite_;
};

double truncated_exp(double x, TruncationOrder k);

/// D^alpha f(t) = lim (f(t e^{eps t^-alpha}) - f(t)) / eps for alpha in (0, 1].
///
/// The quotient is sampled on the geometric step schedule and extrapolated
/// to eps -> 0. A run that does not reach `target_rtol` comes back with
/// `converged == false` rather than throwing; see require_converged().
/// Throws InvalidArgument for t <= 0, n != 0 or a degenerate config, and
/// propagates DomainError from evaluation.
DerivEstimate alpha_deriv_limit(const Expr& f, double t, Alpha alpha, const LimitConfig& cfg = {});
DerivEstimate alpha_deriv_limit(const RealFunction& f, double t, Alpha alpha, const LimitConfig& cfg = {});

/// D^alpha f(0) as the t -> 0+ limit of D^alpha f(t), sampled at
/// t_j = 0.1 * 0.5^j, j = 0..10, and accelerated with Wynn's epsilon.
DerivEstimate alpha_deriv_at_zero(const Expr& f, Alpha alpha, const LimitConfig& cfg = {});

/// Truncated-exponential family D_k^alpha: inner map t -> t e_k(eps t^-alpha).
/// k = 1 is the conformable derivative; k = infinity equals alpha_deriv_limit.
/// Throws InvalidK for k = 0.
DerivEstimate alpha_deriv_k(const Expr& f, double t, Alpha alpha, TruncationOrder k,
                            const LimitConfig& cfg = {});

/// Orders alpha in (n, n+1], n >= 1: the limit estimator applied to f^(n)
/// with step exponent n - alpha.
DerivEstimate alpha_deriv_higher(const Expr& f, double t, Alpha alpha, const LimitConfig& cfg = {});

/// Dispatches on alpha.n(): alpha_deriv_limit for n = 0, alpha_deriv_higher otherwise.
DerivEstimate alpha_deriv(const Expr& f, double t, Alpha alpha, const LimitConfig& cfg = {});

/// Throws NonConvergence when `est` did not converge.
const DerivEstimate& require_converged(const DerivEstimate& est, std::string_view what);

} // namespace fracdiff

#endif // FRACDIFF_NUMERIC_HPP
