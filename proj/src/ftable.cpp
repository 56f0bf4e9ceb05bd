#include "revmc/ftable.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace revmc {

FTable::FTable(double e, double beta, int n_max) : e_(e), beta_(beta) {
  rows_.push_back({0.0});  // f(0,0) = 1
  grow(n_max);
}

void FTable::grow(int n_max) {
  for (int n = static_cast<int>(rows_.size()); n <= n_max; ++n) {
    std::vector<double> row(n + 1);
    row[0] = 0.0;
    for (int k = 1; k < n; ++k) {
      double factor = e_ - 1.0 + beta_ * k + (1.0 - beta_) * n;
      double lf = factor > 0.0 ? rows_[n - 1][k - 1] + std::log(factor) : kNegInf;
      row[k] = log_add(rows_[n - 1][k], lf);
    }
    row[n] = log_rising(e_, n, 1.0);
    rows_.push_back(std::move(row));
  }
}

double FTable::log_f(int n, int k) const {
  if (k < 0 || n < 0 || k > n) return kNegInf;
  if (k == 0) return 0.0;
  if (n > n_max()) throw std::out_of_range("FTable not grown to n");
  return rows_[n][k];
}

const FTable& FCache::table(double e, double beta, int n_min) {
  auto [it, inserted] = tables_.try_emplace({e, beta}, FTable(e, beta, n_min));
  if (!inserted && it->second.n_max() < n_min) it->second.grow(n_min);
  return it->second;
}

double f_bruteforce(double e, double beta, int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("negative arguments");
  if (k > n) return 0.0;
  if (n > 22) throw std::invalid_argument("bruteforce enumeration limited to n <= 22");
  double total = 0.0;
  for (unsigned long u = 0; u < (1ul << n); ++u) {
    if (std::popcount(u) != static_cast<unsigned>(k)) continue;
    double prod = 1.0;
    int direct_before = 0;
    for (int j = 1; j <= n; ++j) {
      if (u & (1ul << (j - 1))) {
        prod *= e + (1.0 - beta) * (j - 1) + beta * direct_before;
        ++direct_before;
      }
    }
    total += prod;
  }
  return total;
}

long double generalized_factorial(long double t, int n, const std::vector<long double>& v) {
  long double prod = 1.0L;
  for (int i = 0; i < n; ++i) prod *= t - v[i];
  return prod;
}

LahSpec LahSpec::make(double e, double beta, int n_max) {
  if (beta >= 1.0 || beta < 0.0) throw std::invalid_argument("LahSpec requires beta in [0,1)");
  LahSpec spec;
  long double scale = 1.0L / (1.0L - static_cast<long double>(beta));
  spec.v0.resize(n_max + 1);
  spec.w0.resize(n_max + 1);
  for (int j = 0; j <= n_max; ++j) {
    spec.v0[j] = -(static_cast<long double>(e) + j) * scale;
    spec.w0[j] = j - j * scale;
  }
  return spec;
}

long double lah(int n, int k, const LahSpec& spec) {
  if (k == 0 && n == 0) return 1.0L;
  if (k > n) return 0.0L;
  if (k == 0) return generalized_factorial(spec.w0[0], n, spec.v0);
  if (n >= static_cast<int>(spec.v0.size()))
    throw std::out_of_range("LahSpec shorter than n");
  // w_j are distinct unless beta = 0, where the sum degenerates.
  if (spec.w0[0] == spec.w0[1]) throw std::domain_error("degenerate W sequence");
  KahanSum sum;
  for (int j = 0; j <= k; ++j) {
    long double num = generalized_factorial(spec.w0[j], n, spec.v0);
    long double den = 1.0L;
    for (int i = 0; i < j; ++i) den *= spec.w0[j] - spec.w0[i];       // (w_j)_{j,W0}
    for (int i = j + 1; i <= k; ++i) den *= spec.w0[j] - spec.w0[i];  // (w_j)_{k-j,W_{j+1}}
    sum.add(num / den);
  }
  return sum.value();
}

double f_closed(double e, double beta, int n, int k) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("closed form requires 0 < beta < 1; use the recursion");
  if (k < 0 || k > n) return 0.0;
  if (k == 0) return 1.0;
  if (k == n) return std::exp(log_rising(e, n, 1.0));
  // The explicit alternating sum of lah() cancels catastrophically for
  // large n; the array recursion C(m+1,j) = C(m,j-1) + (w_j - v_m) C(m,j)
  // has positive coefficients throughout (e + m - j beta > 0 for j <= m),
  // so the whole triangle is computed stably in log space.
  std::vector<double> row{0.0};  // log C(0,0)
  for (int m = 0; m < n; ++m) {
    std::vector<double> next(m + 2, kNegInf);
    for (int j = 0; j <= m + 1; ++j) {
      double carry = j >= 1 ? row[j - 1] : kNegInf;
      double stay = j <= m
                        ? row[j] + std::log((e + m - j * beta) / (1.0 - beta))
                        : kNegInf;
      next[j] = log_add(carry, stay);
    }
    row = std::move(next);
  }
  return std::exp(k * std::log1p(-beta) + row[n - k]);
}

}  // namespace revmc
