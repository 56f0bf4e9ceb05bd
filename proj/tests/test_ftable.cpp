#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "revmc/ftable.hpp"
#include "revmc/logspace.hpp"

using namespace revmc;

TEST_CASE("log_rising basics") {
  CHECK(log_rising(7.0, 0, 3.0) == doctest::Approx(0.0));
  CHECK(std::exp(log_rising(2.0, 3, 0.0)) == doctest::Approx(8.0));
  CHECK(std::exp(log_rising(1.0, 4, 1.0)) == doctest::Approx(24.0));
  CHECK(log_rising(0.0, 2, 1.0) == kNegInf);
  CHECK_THROWS_WITH(log_rising(-1.0, 2, 0.5), "invalid factorial power");
}

TEST_CASE("log-space helpers") {
  CHECK(log_add(kNegInf, kNegInf) == kNegInf);
  CHECK(std::exp(log_add(std::log(0.25), std::log(0.5))) == doctest::Approx(0.75));
  std::vector<double> xs{std::log(1.0), std::log(3.0), kNegInf};
  CHECK(std::exp(log_sum_exp(xs)) == doctest::Approx(4.0));
  CHECK(std::exp(log_mean_exp(xs)) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("generalized factorial") {
  CHECK(generalized_factorial(5.0L, 0, {}) == doctest::Approx(1.0));
  CHECK(generalized_factorial(5.0L, 2, {1.0L, 2.0L, 99.0L}) == doctest::Approx(12.0));
  CHECK(generalized_factorial(4.5L, 3, {0.0L, 1.0L, 2.0L}) ==
        doctest::Approx(4.5 * 3.5 * 2.5));
}

TEST_CASE("lah boundary branches") {
  LahSpec spec = LahSpec::make(1.0, 0.5, 8);
  CHECK(lah(0, 0, spec) == doctest::Approx(1.0));
  CHECK(lah(2, 3, spec) == doctest::Approx(0.0));
  // f(2,1) = 2e + 1 - beta = 2.5 and f = (1-beta)^k C(n, n-k)
  CHECK(lah(2, 1, spec) == doctest::Approx(5.0));
}

TEST_CASE("lah degenerate at beta zero") {
  LahSpec spec = LahSpec::make(1.0, 0.0, 4);
  CHECK_THROWS_WITH(lah(3, 1, spec), "degenerate W sequence");
  CHECK_THROWS_WITH(f_closed(1.0, 0.0, 3, 1),
                    "closed form requires 0 < beta < 1; use the recursion");
}

TEST_CASE("f_bruteforce boundaries") {
  for (double e : {0.5, 2.0})
    for (double b : {0.0, 0.4, 1.0}) {
      CHECK(f_bruteforce(e, b, 5, 0) == doctest::Approx(1.0));
      CHECK(f_bruteforce(e, b, 2, 1) == doctest::Approx(2 * e + 1 - b));
    }
  CHECK(f_bruteforce(2.0, 0.3, 3, 3) == doctest::Approx(24.0));
  CHECK_THROWS(f_bruteforce(1.0, 0.5, 40, 3));
}

TEST_CASE("recursion table boundaries and growth") {
  FTable t(1.3, 0.6, 4);
  for (int n = 0; n <= 4; ++n) {
    CHECK(t.log_f(n, 0) == doctest::Approx(0.0));
    CHECK(t.log_f(n, n) == doctest::Approx(log_rising(1.3, n, 1.0)));
  }
  CHECK(t.log_f(3, 4) == kNegInf);
  t.grow(9);
  CHECK(std::exp(t.log_f(2, 1)) == doctest::Approx(2 * 1.3 + 1 - 0.6));
  CHECK(t.log_f(9, 0) == doctest::Approx(0.0));
}

TEST_CASE("recursion matches bruteforce") {
  for (double e : {0.5, 1.0, 1.7}) {
    for (double b : {0.0, 0.3, 0.97, 1.0}) {
      FTable t(e, b, 12);
      for (int n = 0; n <= 12; ++n)
        for (int k = 0; k <= n; ++k) {
          double exact = f_bruteforce(e, b, n, k);
          double got = std::exp(t.log_f(n, k));
          if (exact == 0.0)
            CHECK(got == doctest::Approx(0.0));
          else
            CHECK(got == doctest::Approx(exact).epsilon(1e-10));
        }
    }
  }
}

TEST_CASE("closed form matches recursion to n=60") {
  for (double e : {0.5, 1.0, 1.7}) {
    for (double b : {0.03, 0.3, 0.5, 0.97}) {
      FTable t(e, b, 60);
      for (int n : {1, 2, 5, 17, 33, 60})
        for (int k = 0; k <= n; ++k) {
          double lf = t.log_f(n, k);
          double fc = f_closed(e, b, n, k);
          CHECK(std::log(fc) == doctest::Approx(lf).epsilon(1e-8));
        }
    }
  }
}

TEST_CASE("closed form boundary k equals n minus 1") {
  FTable t(1.7, 0.97, 30);
  CHECK(std::log(f_closed(1.7, 0.97, 30, 29)) ==
        doctest::Approx(t.log_f(30, 29)).epsilon(1e-9));
}

TEST_CASE("fcache reuses and grows tables") {
  FCache cache;
  const FTable* a = &cache.table(0.5, 0.5, 4);
  const FTable* b = &cache.table(0.5, 0.5, 10);
  CHECK(a == b);
  CHECK(b->n_max() >= 10);
  CHECK(&cache.table(0.6, 0.5, 4) != a);
}
