#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sispace/core.hpp"

using namespace sispace;

namespace {

CoeffSeq random_seq(std::mt19937& rng, int dim, int max_support = 9, int radius = 6) {
  std::uniform_int_distribution<int> count(1, max_support);
  std::uniform_int_distribution<int> pos(-radius, radius);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  CoeffSeq c(dim);
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    LatticePoint k{pos(rng), dim == 2 ? pos(rng) : 0};
    c.set(k, {amp(rng), amp(rng)});
  }
  return c;
}

}  // namespace

TEST_CASE("weight evaluation") {
  CHECK(weight_eval(0.0, 17.3) == doctest::Approx(1.0));
  CHECK(weight_eval(2.0, 1.0) == doctest::Approx(2.0));
  CHECK(weight_eval(-1.0, 0.0) == doctest::Approx(1.0));
  // mu_s * mu_{-s} = 1
  CHECK(weight_eval(3.5, 2.7) * weight_eval(-3.5, 2.7) == doctest::Approx(1.0));
  // Peetre: mu_s(x+y) <= 2^{|s|/2} mu_s(x) mu_s(y)
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    double s = std::abs(u(rng)), x = u(rng), y = u(rng);
    CHECK(weight_eval(s, x + y) <=
          std::pow(2.0, s / 2.0) * weight_eval(s, x) * weight_eval(s, y) * (1 + 1e-12));
  }
}

TEST_CASE("sequence norms") {
  CHECK(seq_norm(CoeffSeq::delta(1), 2.0, 7.0) == doctest::Approx(1.0));

  CoeffSeq dk = CoeffSeq::delta(1, {5, 0});
  CHECK(seq_norm(dk, 2.0, 1.5) == doctest::Approx(weight_eval(1.5, 5.0)));

  CoeffSeq c(1);
  c.set(0, 1.0);
  c.set(1, 1.0);
  CHECK(seq_norm(c, 2.0, 1.0) == doctest::Approx(std::sqrt(3.0)));

  // sup norm
  CHECK(seq_norm(c, std::numeric_limits<double>::infinity(), 1.0) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("sequence norm is monotone in s") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    CoeffSeq c = random_seq(rng, trial % 2 ? 2 : 1);
    double s = u(rng), r = u(rng);
    if (s > r) std::swap(s, r);
    for (double p : {1.0, 2.0}) {
      CHECK(seq_norm(c, p, s) <= seq_norm(c, p, r) * (1 + 1e-12));
    }
  }
}

TEST_CASE("discrete convolution basics") {
  CoeffSeq b(1);
  b.set(-1, {0.5, 1.0});
  b.set(2, {3.0, 0.0});
  CHECK(seq_convolve(CoeffSeq::delta(1), b) == b);

  CHECK(seq_convolve(CoeffSeq::delta(1, {3, 0}), CoeffSeq::delta(1, {-1, 0})) ==
        CoeffSeq::delta(1, {2, 0}));

  CoeffSeq a(1);
  a.set(0, 1.0);
  a.set(1, 2.0);
  CoeffSeq c(1);
  c.set(0, 3.0);
  c.set(-1, 1.0);
  // brute force over index pairs: (0,0)->3, (0,-1)->1, (1,0)->6, (1,-1)->2
  CoeffSeq expect(1);
  expect.set(-1, 1.0);
  expect.set(0, 5.0);
  expect.set(1, 6.0);
  CHECK(seq_convolve(a, c) == expect);
}

TEST_CASE("convolution is commutative and associative, exact on supports") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    int dim = trial % 2 ? 2 : 1;
    CoeffSeq a = random_seq(rng, dim, 5, 4);
    CoeffSeq b = random_seq(rng, dim, 5, 4);
    CoeffSeq c = random_seq(rng, dim, 5, 4);
    CoeffSeq ab = seq_convolve(a, b), ba = seq_convolve(b, a);
    REQUIRE(ab.support_size() == ba.support_size());
    for (const auto& [k, v] : ab.entries()) {
      CHECK(std::abs(v - ba.at(k)) <= 1e-12 * (1 + std::abs(v)));
    }
    CoeffSeq abc1 = seq_convolve(ab, c), abc2 = seq_convolve(a, seq_convolve(b, c));
    for (const auto& [k, v] : abc1.entries()) {
      CHECK(std::abs(v - abc2.at(k)) <= 1e-10 * (1 + std::abs(v)));
    }
  }
}

TEST_CASE("weighted Young inequality") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> su(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = trial % 2 ? 2 : 1;
    CoeffSeq a = random_seq(rng, dim);
    CoeffSeq b = random_seq(rng, dim);
    double s = su(rng);
    double lhs = seq_norm(seq_convolve(a, b), 2.0, s);
    double rhs = std::pow(2.0, s / 2.0) * seq_norm(a, 1.0, s) * seq_norm(b, 2.0, s);
    CHECK(lhs <= rhs * (1 + 1e-10));
  }
}

TEST_CASE("grid validation") {
  GridSpec g;
  g.validate();
  CHECK(g.space_points() == 1025);
  CHECK(g.freq_points() == 1025);
  CHECK(g.space_node(512) == doctest::Approx(0.0));
  CHECK(g.freq_node(512) == doctest::Approx(0.0));
  CHECK(g.fibers_per_axis() == 64);

  GridSpec bad;
  bad.h = 0.3;  // R/h not integral
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
}
