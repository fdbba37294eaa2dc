#pragma once

#include <vector>

namespace ibstab {

/// Standard 4-point IB kernel. Argument in fluid meshwidths.
double phi(double r);

/// Continuous transform  phi_hat(s) = int phi(r) exp(-i s r) dr  (real, even).
double phi_hat(double s);

/// Periodic Fourier coefficient  Phi(q) = phi_hat(2 pi q / n) / n.  Requires n >= 4.
double phi_coeff(long q, int n);

/// Sum over all q of Phi(q)^2, truncated by the tail rule.
/// Also reports the last window bound used.
struct SquareSum {
  double value = 0.0;
  long qcut = 0;
};
SquareSum phi_coeff_square_sum(int n);

/// Ratio of the in-band (|q| <= n/2) energy of Phi to its total 3/(8n).
double bandlimit_ratio(int n);

/// Cached Phi(q) for |q| <= qcut at fixed n. Immutable after construction.
class KernelTable {
 public:
  explicit KernelTable(int n, long qcut = -1);

  int n() const { return n_; }
  long qcut() const { return qcut_; }

  /// Phi(q); values outside the table are computed on demand.
  double operator()(long q) const;

 private:
  int n_;
  long qcut_;
  std::vector<double> values_;  // index q for q = 0..qcut
};

}  // namespace ibstab
