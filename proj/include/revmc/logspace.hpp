#ifndef REVMC_LOGSPACE_HPP
#define REVMC_LOGSPACE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace revmc {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)), safe with -inf.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return kNegInf;
  double m = *std::max_element(xs.begin(), xs.end());
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

inline double log_mean_exp(std::span<const double> xs) {
  return log_sum_exp(xs) - std::log(static_cast<double>(xs.size()));
}

// log of the factorial power r (r+q) (r+2q) ... (r+(n-1)q).
// Empty product for n = 0. A zero factor gives -inf; a negative factor
// is outside the domain of every in-scope call and is an error.
inline double log_rising(double r, long n, double q) {
  double acc = 0.0;
  for (long i = 0; i < n; ++i) {
    double f = r + static_cast<double>(i) * q;
    if (f < 0.0) throw std::domain_error("invalid factorial power");
    if (f == 0.0) return kNegInf;
    acc += std::log(f);
  }
  return acc;
}

// Kahan compensated accumulator for signed sums.
class KahanSum {
 public:
  void add(long double x) {
    long double y = x - c_;
    long double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  long double value() const { return s_; }

 private:
  long double s_ = 0.0L;
  long double c_ = 0.0L;
};

}  // namespace revmc

#endif
