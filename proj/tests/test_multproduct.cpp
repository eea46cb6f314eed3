#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sispace/multproduct.hpp"

using namespace sispace;

namespace {
const GridSpec kGrid = GridSpec{};
const auto kHat = Generator::bspline(2);
constexpr double kPi = std::numbers::pi;

SIFunction make_fn(const Generator& g, CoeffSeq c, double s) {
  SIFunction f;
  f.generators = {g};
  f.coeffs = {std::move(c)};
  f.order_s = s;
  return f;
}
}  // namespace

TEST_CASE("Mikhlin bound check") {
  auto one = mikhlin_check(MultiplierSymbol::constant(1.0), kGrid, 1);
  CHECK(one.verdict);
  REQUIRE(one.constants.size() == 2);
  CHECK(one.constants[0] == doctest::Approx(1.0));
  CHECK(one.constants[1] == 0.0);

  auto riesz = mikhlin_check(MultiplierSymbol::riesz(), kGrid, 1);
  CHECK(riesz.verdict);
  CHECK(riesz.constants[0] <= 1.0 + 1e-9);
  // |t| |a'| with a' = (1+t^2)^{-3/2} peaks at 2/(3 sqrt 3)
  CHECK(riesz.constants[1] == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-3));

  MultiplierSymbol linear{[](const Point& t) { return cplx{t[0], 0.0}; }};
  CHECK(!mikhlin_check(linear, kGrid, 1).verdict);

  // d = 2 goes through multi-indices up to total order 2
  MultiplierSymbol riesz2{[](const Point& t) {
    return cplx{t[0] / weight_eval(1.0, t), 0.0};
  }};
  auto r2 = mikhlin_check(riesz2, kGrid, 2);
  CHECK(r2.verdict);
  CHECK(r2.constants.size() == 3);
}

TEST_CASE("multiplier application") {
  CoeffSeq c(1);
  c.set(0, cplx{1.0, 0.5});
  c.set(2, -0.25);
  auto f = make_fn(kHat, c, 1.0);

  // the resampled generators are compared in frequency, where they live
  auto same = apply_multiplier(MultiplierSymbol::constant(1.0), f, kGrid);
  CHECK(same.coeffs[0] == c);
  CHECK(same.order_s == f.order_s);
  int Nf = kGrid.freq_points();
  for (int j = 0; j < Nf; j += 11) {
    double t = kGrid.freq_node(j);
    CHECK(std::abs(same.generators[0].fourier(t) - kHat.fourier(t)) < 1e-9);
  }

  auto twice = apply_multiplier(MultiplierSymbol::constant(2.0), f, kGrid);
  CHECK(twice.coeffs[0] == c);
  for (int j = 0; j < Nf; j += 11) {
    double t = kGrid.freq_node(j);
    CHECK(std::abs(twice.generators[0].fourier(t) - 2.0 * kHat.fourier(t)) < 1e-9);
  }
  // and in space on a smooth band-limited-in-practice profile
  auto gsmooth = make_fn(Generator::gaussian(1.0), c, 0.0);
  auto same_g = apply_multiplier(MultiplierSymbol::constant(1.0), gsmooth, kGrid);
  for (double x : {-0.7, 0.0, 1.3})
    CHECK(std::abs(same_g.evaluate(x) - gsmooth.evaluate(x)) < 1e-9);

  // pure modulation shifts the function; the hat is not band-limited, so the
  // resampled generator carries the truncation tail: compare at 1e-6 scale
  double h0 = 0.375;
  auto g = make_fn(Generator::gaussian(1.0), c, 0.0);
  auto shifted = apply_multiplier(MultiplierSymbol::shift({h0, 0.0}), g, kGrid);
  for (double x : {-1.1, 0.25, 2.0})
    CHECK(std::abs(shifted.evaluate(x) - g.evaluate(x - h0)) < 1e-6);

  MultiplierSymbol linear{[](const Point& t) { return cplx{t[0], 0.0}; }};
  CHECK_THROWS_AS(apply_multiplier(linear, f, kGrid), PreconditionError);
  WarningSink sink;
  auto forced = apply_multiplier(linear, f, kGrid, true, &sink);
  CHECK(!sink.empty());
  CHECK(forced.coeffs[0] == c);
}

TEST_CASE("multiplier norm bound surrogate") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  auto riesz = MultiplierSymbol::riesz();
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    CoeffSeq c(1);
    for (int k = -3; k <= 3; ++k) c.set({k, 0}, cplx{amp(rng), amp(rng)});
    auto f = make_fn(Generator::gaussian(1.0), c, 1.0);
    auto Tf = apply_multiplier(riesz, f, kGrid);
    double num = sobolev_norm(Tf, 1.0, kGrid);
    double den = sobolev_norm(f, 1.0, kGrid);
    worst = std::max(worst, num / den);
  }
  CHECK(worst <= 1.0 + 1e-9);  // |riesz| <= 1 pointwise
}

TEST_CASE("periodic product order bookkeeping and values") {
  CoeffSeq c0 = CoeffSeq::delta(1);
  auto f2 = make_fn(kHat, c0, 2.0);

  auto gone = PeriodicMultiplier::trig(CoeffSeq::delta(1), 5);
  auto same = periodic_multiply(gone, f2, kGrid);
  CHECK(same.order_s == 2.0);
  for (int i = 0; i < kGrid.space_points(); i += 41) {
    double x = kGrid.space_node(i);
    CHECK(std::abs(same.evaluate(x) - f2.evaluate(x)) < 1e-9);
  }

  CHECK(periodic_multiply(PeriodicMultiplier::trig(CoeffSeq::delta(1), 3), f2, kGrid)
            .order_s == 2.0);
  CHECK(periodic_multiply(PeriodicMultiplier::trig(CoeffSeq::delta(1), 1), f2, kGrid)
            .order_s == 1.0);

  // g(x) = cos 2 pi x against a direct pointwise oracle on grid nodes
  CoeffSeq cos_c(1);
  cos_c.set(-1, 0.5);
  cos_c.set(1, 0.5);
  auto gcos = PeriodicMultiplier::trig(cos_c, 4);
  auto prod = periodic_multiply(gcos, make_fn(kHat, c0, 2.0), kGrid);
  for (int i = 0; i < kGrid.space_points(); i += 37) {
    double x = kGrid.space_node(i);
    cplx expect = std::cos(2.0 * kPi * x) * kHat.evaluate(x);
    CHECK(std::abs(prod.evaluate(x) - expect) < 1e-8);
  }

  CHECK_THROWS_AS(periodic_multiply(gcos, make_fn(kHat, c0, 1.5), kGrid),
                  OrderViolation);
}

TEST_CASE("periodic product: space and frequency paths agree") {
  CoeffSeq cos_c(1);
  cos_c.set(-1, 0.5);
  cos_c.set(1, 0.5);
  auto gcos = PeriodicMultiplier::trig(cos_c, 4);
  auto prod = periodic_multiply(gcos, make_fn(Generator::gaussian(1.0),
                                              CoeffSeq::delta(1), 2.0), kGrid);
  auto freq_path = periodic_product_spectrum(gcos, Generator::gaussian(1.0), kGrid);
  int Nf = kGrid.freq_points();
  for (int j = 0; j < Nf; j += 3) {
    double t = kGrid.freq_node(j);
    CHECK(std::abs(prod.generators[0].fourier(t) - freq_path[std::size_t(j)]) < 1e-8);
  }

  // periodized spline factor: smooth, even, p = q - 1
  auto sp = PeriodicMultiplier::spline(3);
  CHECK(sp.p == 2);
  CHECK(std::abs(sp.eval({0.25, 0.0}) - sp.eval({-0.25, 0.0})) < 1e-12);
  CHECK(std::abs(sp.eval({0.3, 0.0}).imag()) < 1e-12);
}

TEST_CASE("symbol product algebra") {
  CoeffSeq c1(1), c2(1);
  c1.set(0, 1.0);
  c1.set(1, cplx{0.0, -2.0});
  c2.set(-1, 0.5);
  c2.set(2, 1.5);
  PeriodicSymbol t1{c1, 1.0, 0.5}, t2{c2, 1.0, 1.0};

  PeriodicSymbol unit{CoeffSeq::delta(1), 1.0, 2.0};
  auto same = symbol_product(t1, unit);
  CHECK(same.coeffs == c1);

  CHECK(symbol_product(t1, t2).p == doctest::Approx(1.0));
  PeriodicSymbol t2b{c2, 2.0, 1.0};
  CHECK(symbol_product(t1, t2b).p == doctest::Approx(2.0));
  CHECK(symbol_product(t1, t2b).r == doctest::Approx(0.5));

  // commutative, and evaluation agrees with the pointwise product
  auto ab = symbol_product(t1, t2);
  auto ba = symbol_product(t2, t1);
  CHECK(ab.coeffs == ba.coeffs);
  for (double t : {0.0, 0.21, 0.5, 0.77})
    CHECK(std::abs(ab.eval(Point{t, 0.0}) - t1.eval(Point{t, 0.0}) * t2.eval(Point{t, 0.0})) <
          1e-9);

  PeriodicSymbol bad1{c1, 3.0, 0.0}, bad2{c2, 3.0, 0.0};
  CHECK_THROWS_AS(symbol_product(bad1, bad2), ExponentViolation);
  PeriodicSymbol neg1{c1, 1.0, -2.0}, neg2{c2, 1.0, 1.0};
  CHECK_THROWS_AS(symbol_product(neg1, neg2), ExponentViolation);
}

TEST_CASE("symbol product norm bound") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_int_distribution<int> pos(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    CoeffSeq a(1), b(1);
    for (int e = 0; e < 4; ++e) {
      a.add({pos(rng), 0}, cplx{amp(rng), amp(rng)});
      b.add({pos(rng), 0}, cplx{amp(rng), amp(rng)});
    }
    double r = 0.75;
    PeriodicSymbol ta{a, 1.0, r}, tb{b, 1.0, r};
    auto prod = symbol_product(ta, tb);
    double lhs = seq_norm(prod.coeffs, prod.p, r);
    double rhs = std::pow(2.0, r / 2.0) * seq_norm(a, 1.0, r) * seq_norm(b, 1.0, r);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}
