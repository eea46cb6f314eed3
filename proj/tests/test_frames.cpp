#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sispace/frames.hpp"

using namespace sispace;

namespace {
const GridSpec kGrid = GridSpec{};
const auto kHat = Generator::bspline(2);
const auto kBox = Generator::bspline(1);
}  // namespace

TEST_CASE("gramian fiber values") {
  // single hat: [hat,hat]_0(1/2) = 1/3
  auto G = gramian_fiber({kHat}, 0.0, {0.5, 0.0}, 32);
  CHECK(G[0].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));

  // duplicated generator: rank <= 1 fiber
  auto G2 = gramian_fiber({kHat, kHat}, 0.0, {0.3, 0.0}, 32);
  // det = G00*G11 - |G01|^2 = 0 for identical rows
  cplx det = G2[0] * G2[3] - G2[1] * G2[2];
  CHECK(std::abs(det) < 1e-12);

  // gaussian at omega = 0: sum_k e^{-2 pi k^2}, K=32
  double expect = 0.0;
  for (int k = -32; k <= 32; ++k) expect += std::exp(-2.0 * std::numbers::pi * k * k);
  auto Gg = gramian_fiber({Generator::gaussian(1.0)}, 0.0, {0.0, 0.0}, 32);
  CHECK(Gg[0].real() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(Gg[0].real() == doctest::Approx(1.0037349).epsilon(1e-4));
}

TEST_CASE("gramian fibers are Hermitian PSD across the grid") {
  std::vector<Generator> bank{kHat, Generator::gaussian(1.0)};
  int M = kGrid.fibers_per_axis();
  for (int q = 0; q < M; q += 4) {
    auto G = gramian_fiber(bank, 0.5, {double(q) / M, 0.0}, kGrid.K);
    CHECK(std::abs(G[1] - std::conj(G[2])) < 1e-12);
    // 2x2 PSD: trace >= 0, det >= -eps
    double tr = G[0].real() + G[3].real();
    double det = (G[0] * G[3] - G[1] * G[2]).real();
    CHECK(tr >= -1e-12);
    CHECK(det >= -1e-12);
  }
}

TEST_CASE("frame bounds for hat and box") {
  auto hat_rep = frame_bounds({kHat}, 0.0, kGrid);
  CHECK(hat_rep.lower_A == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  CHECK(hat_rep.upper_B == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(hat_rep.spectrum_measure == doctest::Approx(1.0));
  CHECK(hat_rep.verdict == Verdict::Consistent);

  // the box bracket tail decays like 1/K, so the lattice truncation must be
  // deep before the orthonormal-shift identity shows up at 1e-3
  GridSpec deep = kGrid;
  deep.K = 512;
  auto box_rep = frame_bounds({kBox}, 0.0, deep);
  CHECK(box_rep.lower_A == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(box_rep.upper_B == doctest::Approx(1.0).epsilon(1e-3));

  // every fiber eigenvalue sits inside [A - tol, B + tol]
  int M = kGrid.fibers_per_axis();
  for (int q = 0; q < M; ++q) {
    auto G = gramian_fiber({kHat}, 0.0, {double(q) / M, 0.0}, kGrid.K);
    CHECK(G[0].real() >= hat_rep.lower_A - 1e-9);
    CHECK(G[0].real() <= hat_rep.upper_B + 1e-9);
  }
}

TEST_CASE("zero generator violates the frame condition") {
  GridSpec grid = kGrid;
  std::vector<cplx> zeros(std::size_t(grid.space_points()), 0.0);
  auto zero_gen = Generator::grid_sampled(grid, zeros, 1);
  auto rep = frame_bounds({zero_gen}, 0.0, grid);
  CHECK(rep.spectrum_measure == doctest::Approx(0.0));
  CHECK(rep.verdict == Verdict::Violated);
}

TEST_CASE("condition (A) verdicts") {
  CHECK(check_condition_A({kHat}, 0.0, kGrid).verdict == Verdict::Consistent);
  CHECK(check_condition_A({Generator::gaussian(1.0)}, 1.0, kGrid).verdict ==
        Verdict::Consistent);

  GridSpec grid = kGrid;
  std::vector<cplx> zeros(std::size_t(grid.space_points()), 0.0);
  auto zero_gen = Generator::grid_sampled(grid, zeros, 1);
  CHECK(check_condition_A({zero_gen}, 0.0, grid).verdict == Verdict::Violated);

  CHECK_THROWS_AS(check_condition_A({kHat}, -1.0, kGrid), PreconditionError);
}

TEST_CASE("projection of a shifted generator recovers the shift coefficients") {
  SIFunction h;
  h.generators = {kHat};
  h.coeffs = {CoeffSeq::delta(1, {3, 0})};
  auto res = project(h, {kHat}, 0.0, kGrid);
  REQUIRE(res.projection.coeffs.size() == 1);
  CHECK(std::abs(res.projection.coeffs[0].at(3) - cplx{1.0, 0.0}) < 1e-9);
  CHECK(res.residual_norm <= 1e-8);

  // idempotence: projecting the projection leaves residual <= tol
  auto res2 = project(res.projection, {kHat}, 0.0, kGrid);
  CHECK(res2.residual_norm <= 1e-8);
}

TEST_CASE("projection of zero is zero") {
  SIFunction h;
  h.generators = {kHat};
  h.coeffs = {CoeffSeq(1)};
  auto res = project(h, {kHat}, 0.0, kGrid);
  CHECK(res.residual_norm <= 1e-12);
  for (const auto& [k, v] : res.projection.coeffs[0].entries())
    CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("hat*hat is measurably outside V(hat)") {
  // hat*hat = centered B-spline of order 4
  auto beta4 = Generator::bspline(4);
  auto res = project(beta4, {kHat}, 0.0, kGrid);
  CHECK(res.residual_norm > 0.01);
}

TEST_CASE("projection residual is orthogonal to the shifts") {
  auto beta4 = Generator::bspline(4);
  auto res = project(beta4, {kHat}, 0.0, kGrid);
  auto proj_hat = res.projection.fourier_fn();
  auto target_hat = beta4.fourier_fn();
  FreqFn diff = [&](const Point& t) { return target_hat(t) - proj_hat(t); };
  // <h - Ph, phi(.-k)>_{H^0} via the bracket unfolding over the fiber grid
  int M = kGrid.fibers_per_axis();
  for (int k = -4; k <= 4; ++k) {
    cplx acc = 0.0;
    for (int q = 0; q < M; ++q) {
      Point omega{double(q) / M, 0.0};
      cplx br = bracket(diff, kHat.fourier_fn(), 0.0, omega, kGrid.K, 1);
      double phase = 2.0 * std::numbers::pi * k * omega[0];
      acc += br * cplx{std::cos(phase), std::sin(phase)};
    }
    acc /= double(M);
    CHECK(std::abs(acc) < 1e-6);
  }
}

TEST_CASE("transition regularity") {
  for (int m = 1; m <= 4; ++m) {
    auto rep = transition_regularity(TransitionMatrix::identity(m), kGrid);
    CHECK(rep.regular);
    CHECK(rep.min_abs_det == doctest::Approx(1.0));
  }

  // tau(omega) = 1 + e^{-2 pi i omega} vanishes at omega = 1/2
  CoeffSeq c(1);
  c.set(0, 1.0);
  c.set(1, 1.0);
  TransitionMatrix A;
  A.m = 1;
  A.dim = 1;
  A.entries = {PeriodicSymbol{c}};
  auto rep = transition_regularity(A, kGrid);
  CHECK(!rep.regular);
  bool found_half = false;
  for (const auto& [omega, ad] : rep.singular_points)
    if (std::abs(omega[0] - 0.5) < 1e-12) found_half = true;
  CHECK(found_half);

  // diagonal of nonvanishing trig polynomials is regular
  CoeffSeq nz(1);
  nz.set(0, 3.0);
  nz.set(1, 1.0);
  TransitionMatrix D;
  D.m = 2;
  D.dim = 1;
  D.entries = {PeriodicSymbol{nz}, PeriodicSymbol{CoeffSeq(1)}, PeriodicSymbol{CoeffSeq(1)},
               PeriodicSymbol{nz}};
  CHECK(transition_regularity(D, kGrid).regular);
}

TEST_CASE("same-space check") {
  // integer shift preserves the space; use a gaussian so grid sampling of the
  // shift is alias-free
  GridSpec grid = kGrid;
  auto g = Generator::gaussian(1.0);
  int N = grid.space_points();
  std::vector<cplx> shifted(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    shifted[std::size_t(i)] = g.evaluate(grid.space_node(i) - 1.0);
  auto g_shift = Generator::grid_sampled(grid, shifted, 1);

  auto rep_same = same_space_check({g}, {g_shift}, 0.0, grid);
  CHECK(rep_same.verdict == Verdict::Consistent);

  // identical banks: residuals 0
  auto rep_id = same_space_check({kHat}, {kHat}, 0.0, grid);
  CHECK(rep_id.verdict == Verdict::Consistent);
  for (double r : rep_id.residuals_psi_onto_phi) CHECK(r <= 1e-8);

  // V(hat*hat) != V(hat): one-sided residual witness
  auto rep_diff = same_space_check({kHat}, {Generator::bspline(4)}, 0.0, grid);
  CHECK(rep_diff.verdict == Verdict::Violated);
  double max_res = 0.0;
  for (double r : rep_diff.residuals_psi_onto_phi) max_res = std::max(max_res, r);
  CHECK(max_res > 0.01);
}
