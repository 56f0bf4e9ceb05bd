#ifndef REVMC_FTABLE_HPP
#define REVMC_FTABLE_HPP

#include <map>
#include <vector>

#include "revmc/logspace.hpp"

namespace revmc {

// Triangular table of log f_{e,beta}(n, k), the sum over interleavings
// of k direct and n-k mediated crossings of one edge. Filled by the
// recursion
//   f(n,k) = f(n-1,k) + f(n-1,k-1) [e - 1 + beta k + (1-beta) n]
// with f(n,0) = 1 and f(n,n) = (e)_{n up 1}.
class FTable {
 public:
  FTable(double e, double beta, int n_max = 0);

  double e() const { return e_; }
  double beta() const { return beta_; }
  int n_max() const { return static_cast<int>(rows_.size()) - 1; }

  // log f(n, k); 0 for k <= 0 boundaries, -inf above the diagonal.
  double log_f(int n, int k) const;

  void grow(int n_max);

 private:
  double e_, beta_;
  std::vector<std::vector<double>> rows_;
};

// Lazily grown tables keyed by (e, beta). Not thread-safe: use one
// cache per worker.
class FCache {
 public:
  const FTable& table(double e, double beta, int n_min);

 private:
  std::map<std::pair<double, double>, FTable> tables_;
};

// Exact 2^n enumeration over crossing patterns; n <= 25.
double f_bruteforce(double e, double beta, int n, int k);

// Generalized factorial (t)_{n,V0} = (t - v_0) ... (t - v_{n-1}).
long double generalized_factorial(long double t, int n, const std::vector<long double>& v);

// Increment sequences of the closed form for f_{e,beta}, beta < 1.
struct LahSpec {
  std::vector<long double> v0;  // v_j = -(e + j) / (1 - beta)
  std::vector<long double> w0;  // w_j = j - j / (1 - beta)
  static LahSpec make(double e, double beta, int n_max);
};

// Generalized Lah number C(n, k, V0, W0).
long double lah(int n, int k, const LahSpec& spec);

// Closed form (1-beta)^k C(n, n-k, V0, W0); requires 0 < beta < 1.
double f_closed(double e, double beta, int n, int k);

}  // namespace revmc

#endif
