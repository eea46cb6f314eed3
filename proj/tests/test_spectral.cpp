#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sispace/spectral.hpp"

using namespace sispace;

namespace {
constexpr double kPi = std::numbers::pi;
const GridSpec kGrid = GridSpec{};
}  // namespace

TEST_CASE("analytic Fourier forms") {
  auto g = Generator::gaussian(1.0);
  CHECK(g.fourier(0.0).real() == doctest::Approx(1.0));

  auto hat = Generator::bspline(2);
  CHECK(std::abs(hat.fourier(1.0)) == doctest::Approx(0.0).epsilon(1e-12));

  auto box = Generator::bspline(1);
  CHECK(box.fourier(0.5).real() == doctest::Approx(2.0 / kPi));
}

TEST_CASE("space forms match their transforms (DFT consistency)") {
  // sampled gaussian: forward DFT vs closed form
  GridSpec grid = kGrid;
  auto g = Generator::gaussian(1.0);
  int N = grid.space_points();
  std::vector<cplx> vals(N);
  for (int i = 0; i < N; ++i) vals[std::size_t(i)] = g.evaluate(grid.space_node(i));
  auto freq = forward_dft(grid, vals, 1);
  int Nf = grid.freq_points();
  double max_err = 0.0;
  for (int j = 0; j < Nf; ++j)
    max_err = std::max(max_err,
                       std::abs(freq[std::size_t(j)] - g.fourier(grid.freq_node(j))));
  CHECK(max_err < 1e-9);
}

TEST_CASE("translation-to-modulation identity") {
  GridSpec grid = kGrid;
  auto g = Generator::gaussian(1.0);
  int N = grid.space_points();
  int shift = 3;
  std::vector<cplx> vals(N);
  for (int i = 0; i < N; ++i)
    vals[std::size_t(i)] = g.evaluate(grid.space_node(i) - shift);
  auto freq = forward_dft(grid, vals, 1);
  int Nf = grid.freq_points();
  double max_err = 0.0;
  for (int j = 0; j < Nf; ++j) {
    double t = grid.freq_node(j);
    cplx ek{std::cos(2.0 * kPi * shift * t), -std::sin(2.0 * kPi * shift * t)};
    max_err = std::max(max_err, std::abs(freq[std::size_t(j)] - ek * g.fourier(t)));
  }
  CHECK(max_err < 1e-9);
}

TEST_CASE("Parseval on the grid for a Gaussian") {
  GridSpec grid = kGrid;
  auto g = Generator::gaussian(1.0);
  int N = grid.space_points();
  double space = 0.0;
  for (int i = 0; i < N; ++i) space += std::norm(g.evaluate(grid.space_node(i)));
  space *= grid.h;
  double freq = 0.0;
  int Nf = grid.freq_points();
  for (int j = 0; j < Nf; ++j) freq += std::norm(g.fourier(grid.freq_node(j)));
  freq *= grid.freq_step();
  CHECK(std::abs(space - freq) <= 1e-6 * freq);
}

TEST_CASE("sobolev norms") {
  GridSpec grid = kGrid;
  auto g = Generator::gaussian(1.0);
  CHECK(sobolev_norm(g, 0.0, grid) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-8));

  SIFunction zero;
  zero.generators = {g};
  zero.coeffs = {CoeffSeq(1)};
  CHECK(sobolev_norm(zero, 1.0, grid) == doctest::Approx(0.0));

  SIFunction single;
  single.generators = {g};
  single.coeffs = {CoeffSeq::delta(1)};
  CHECK(sobolev_norm(single, 0.0, grid) ==
        doctest::Approx(sobolev_norm(g, 0.0, grid)).epsilon(1e-12));
}

TEST_CASE("bracket of the hat against the autocorrelation closed form") {
  // [hat,hat]_0(omega) = 2/3 + (1/3) cos(2 pi omega)
  auto hat = Generator::bspline(2);
  for (double omega : {0.0, 0.125, 0.25, 0.5, 0.7}) {
    cplx b = bracket(hat, hat, 0.0, omega, 32);
    double expect = 2.0 / 3.0 + std::cos(2.0 * kPi * omega) / 3.0;
    CHECK(b.real() == doctest::Approx(expect).epsilon(1e-6));
    CHECK(std::abs(b.imag()) < 1e-12);
  }
  CHECK(bracket(hat, hat, 0.0, 0.0, 32).real() == doctest::Approx(1.0));
  CHECK(bracket(hat, hat, 0.0, 0.5, 32).real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("bracket is Hermitian, nonnegative on the diagonal, 1-periodic") {
  auto g = Generator::gaussian(1.3);
  auto hat = Generator::bspline(2);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    double omega = u(rng), s = 2.0 * u(rng);
    cplx diag = bracket(g, g, s, omega, 24);
    CHECK(diag.real() >= 0.0);
    CHECK(std::abs(diag.imag()) < 1e-12);
    cplx ab = bracket(g, hat, s, omega, 24);
    cplx ba = bracket(hat, g, s, omega, 24);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
    cplx periodic = bracket(g, g, s, omega + 1.0, 24);
    // shifting omega by 1 re-centers the truncated sum; agreement is to tail size
    CHECK(std::abs(periodic - diag) < 1e-8);
  }
}

TEST_CASE("periodic symbol evaluation") {
  PeriodicSymbol one{CoeffSeq::delta(1)};
  CHECK(std::abs(one.eval(0.37) - cplx{1.0, 0.0}) < 1e-15);

  PeriodicSymbol e1{CoeffSeq::delta(1, {1, 0})};
  CHECK(std::abs(e1.eval(0.5) - cplx{-1.0, 0.0}) < 1e-12);

  CoeffSeq two(1);
  two.set(0, 1.0);
  two.set(1, 1.0);
  PeriodicSymbol tau{two};
  CHECK(std::abs(tau.eval(0.25) - cplx{1.0, -1.0}) < 1e-12);

  // 1-periodicity
  CHECK(std::abs(tau.eval(0.3) - tau.eval(1.3)) < 1e-12);
}

TEST_CASE("grid-sampled generator round trip") {
  GridSpec grid = kGrid;
  auto g = Generator::gaussian(1.0);
  int N = grid.space_points();
  std::vector<cplx> vals(N);
  for (int i = 0; i < N; ++i) vals[std::size_t(i)] = g.evaluate(grid.space_node(i));
  auto sampled = Generator::grid_sampled(grid, vals, 1);

  // frequency samples match the closed form
  CHECK(std::abs(sampled.fourier(0.25) - g.fourier(0.25)) < 1e-9);
  // off-node space evaluation via band-limited resummation
  CHECK(std::abs(sampled.evaluate(0.5 + grid.h / 3.0) - g.evaluate(0.5 + grid.h / 3.0)) <
        1e-8);
}

TEST_CASE("L-infinity periodization diagnostic") {
  auto hat = Generator::bspline(2);
  // partition of unity: sum_j hat(x+j) = 1 for all x
  CHECK(hat.linf_periodization(8) == doctest::Approx(1.0).epsilon(1e-12));
  auto g = Generator::gaussian(1.0);
  double val = g.linf_periodization(8);
  CHECK(val >= 1.0);
  CHECK(val < 2.0);
}

TEST_CASE("generator_fourier warns about aliasing for wide spectra") {
  GridSpec tight = kGrid;
  tight.freq_radius = 1.0;
  WarningSink sink;
  generator_fourier(Generator::bspline(1), tight, &sink);  // sinc decays slowly
  CHECK(!sink.empty());

  WarningSink clean;
  generator_fourier(Generator::gaussian(1.0), kGrid, &clean);
  CHECK(clean.empty());
}
