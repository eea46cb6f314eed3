#include "sispace/convcalc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sispace/frames.hpp"
#include "sispace/kernels.hpp"

namespace sispace {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Point> fiber_grid(const GridSpec& grid, int dim) {
  int M = grid.fibers_per_axis();
  std::vector<Point> out;
  if (dim == 1) {
    out.reserve(std::size_t(M));
    for (int q = 0; q < M; ++q) out.push_back({double(q) / M, 0.0});
  } else {
    out.reserve(std::size_t(M) * M);
    for (int q0 = 0; q0 < M; ++q0)
      for (int q1 = 0; q1 < M; ++q1)
        out.push_back({double(q0) / M, double(q1) / M});
  }
  return out;
}

// Vanishing order of |phihat| at t along axis `axis`: |phihat(t + delta e)|
// scales like delta^m near an order-m zero, so halving delta divides the
// value by 2^m.
int vanishing_order(const Generator& phi, const Point& t, int axis) {
  const double delta = 1.0 / 256.0;
  double best = 0.0;
  int votes = 0;
  for (double sign : {1.0, -1.0}) {
    Point p1 = t, p2 = t;
    p1[std::size_t(axis)] += sign * delta;
    p2[std::size_t(axis)] += sign * delta / 2.0;
    double f1 = std::abs(phi.fourier(p1)), f2 = std::abs(phi.fourier(p2));
    if (f2 <= 0.0) continue;
    best += std::log2(f1 / f2);
    ++votes;
  }
  if (votes == 0) return 1;
  int m = int(std::lround(best / votes));
  return std::clamp(m, 1, 6);
}

}  // namespace

SIFunction delta_train_convolve(const CoeffSeq& a, const SIFunction& g, double r) {
  g.validate();
  if (a.dim() != g.dim())
    throw DimensionMismatch("delta train and function dimensions differ");
  if (g.order_s > r)
    throw OrderViolation("delta-train convolution requires the train weight order r >= "
                         "the function order s; shifts of an H^s function only stay in "
                         "H^s when the train is summable at that order");
  SIFunction out;
  out.generators = g.generators;
  out.order_s = g.order_s;
  out.coeffs.reserve(g.coeffs.size());
  for (const auto& b : g.coeffs) out.coeffs.push_back(seq_convolve(a, b));
  return out;
}

Generator generator_convolve(const Generator& phi, const Generator& psi,
                             const GridSpec& grid, WarningSink* warnings) {
  if (phi.dim() != psi.dim())
    throw DimensionMismatch("generator convolution requires equal dimensions");
  auto fa = generator_fourier(phi, grid, warnings);
  auto fb = generator_fourier(psi, grid, warnings);
  std::vector<cplx> prod(fa.size());
  kernels::cmul(fa.data(), fb.data(), prod.data(), fa.size());
  return Generator::from_freq_samples(grid, std::move(prod), phi.dim());
}

ConvolutionResult fgsi_convolve(const SIFunction& f, const SIFunction& g, double eps,
                                const GridSpec& grid, WarningSink* warnings) {
  f.validate();
  g.validate();
  int d = f.dim();
  if (g.dim() != d) throw DimensionMismatch("convolution operands differ in dimension");
  double s = f.order_s, r = g.order_s;
  if (!(s > d / 2.0))
    throw OrderViolation("FGSI convolution requires order s > d/2 for the first factor");
  if (s > r)
    throw OrderViolation("FGSI convolution requires s <= r (put the smoother factor second)");
  if (!(eps > 0.0) || s < d / 2.0 + eps)
    throw OrderViolation("FGSI convolution requires 0 < eps <= s - d/2");

  ConvolutionResult out;
  out.epsilon = eps;
  out.target_order = s - d / 2.0 - eps;
  out.result.order_s = out.target_order;

  double young = std::pow(2.0, std::abs(out.target_order) / 2.0);
  for (std::size_t i = 0; i < f.generators.size(); ++i) {
    for (std::size_t j = 0; j < g.generators.size(); ++j) {
      out.result.generators.push_back(
          generator_convolve(f.generators[i], g.generators[j], grid, warnings));
      CoeffSeq c = seq_convolve(f.coeffs[i], g.coeffs[j]);
      double lhs = seq_norm(c, 1.0, out.target_order);
      double rhs = young * seq_norm(f.coeffs[i], 1.0, out.target_order) *
                   seq_norm(g.coeffs[j], 1.0, out.target_order);
      if (lhs > rhs * (1.0 + 1e-9))
        warn(warnings, "convolution coefficients exceed the weighted Young bound");
      out.result.coeffs.push_back(std::move(c));
    }
  }
  return out;
}

namespace {

// One grid row of |phihat|. Maximal runs of consecutive sub-tolerance nodes
// are classified: short runs are isolated zeros; long runs that decay
// monotonically (by at least 5% per node) are spectral tails heading to zero,
// not zeros of the transform; anything else is an extended zero region.
void scan_row(const Generator& phi, const GridSpec& grid, int j1,
              std::vector<AnnihilatorZero>* zeros) {
  int d = phi.dim();
  double tol = tolerances().abs;
  int Nf = grid.freq_points();
  auto node = [&](int j) {
    return Point{grid.freq_node(j), d == 2 ? grid.freq_node(j1) : 0.0};
  };
  std::vector<double> mag(static_cast<std::size_t>(Nf));
  for (int j = 0; j < Nf; ++j) mag[std::size_t(j)] = std::abs(phi.fourier(node(j)));

  int j = 0;
  while (j < Nf) {
    if (mag[std::size_t(j)] > tol) {
      ++j;
      continue;
    }
    int lo = j;
    while (j < Nf && mag[std::size_t(j)] <= tol) ++j;
    int hi = j - 1;  // run [lo, hi]
    if (hi - lo + 1 >= 3) {
      bool decreasing = true, increasing = true;
      for (int i = lo; i < hi; ++i) {
        double a = mag[std::size_t(i)], b = mag[std::size_t(i + 1)];
        if (!(a > 0.0 && b <= 0.95 * a)) decreasing = false;
        if (!(b > 0.0 && a <= 0.95 * b)) increasing = false;
      }
      if (!decreasing && !increasing)
        throw NonDiscreteZeroSet(
            "the generator's Fourier transform vanishes on an extended region; point "
            "masses on the zero set are not isolated and recovery is ill-posed");
      continue;  // monotone tail: decay toward the cutoff, not a zero
    }
    int rep = lo;
    for (int i = lo; i <= hi; ++i)
      if (mag[std::size_t(i)] < mag[std::size_t(rep)]) rep = i;
    AnnihilatorZero z;
    z.t = node(rep);
    z.multiplicity = vanishing_order(phi, z.t, 0);
    if (d == 2) z.multiplicity = std::min(z.multiplicity, vanishing_order(phi, z.t, 1));
    zeros->push_back(z);
  }
}

}  // namespace

AnnihilatorSpectrum annihilator_spectrum(const Generator& phi, const GridSpec& grid) {
  AnnihilatorSpectrum spec;
  if (phi.dim() == 1) {
    scan_row(phi, grid, 0, &spec.zeros);
  } else {
    for (int j1 = 0; j1 < grid.freq_points(); ++j1) scan_row(phi, grid, j1, &spec.zeros);
  }
  std::sort(spec.zeros.begin(), spec.zeros.end(), [](const auto& a, const auto& b) {
    return a.t[0] != b.t[0] ? a.t[0] < b.t[0] : a.t[1] < b.t[1];
  });
  return spec;
}

RecoveryResult convolutor_recover(const SIFunction& target, const Generator& phi,
                                  double s, const GridSpec& grid,
                                  WarningSink* warnings) {
  target.validate();
  int d = phi.dim();
  if (target.dim() != d)
    throw DimensionMismatch("recovery target and generator dimensions differ");
  auto fb = frame_bounds({phi}, s, grid, warnings);
  if (fb.verdict == Verdict::Violated)
    throw PreconditionError(
        "recovery requires the generator shifts to form a frame for their span");

  RecoveryResult out;
  out.spectrum = annihilator_spectrum(phi, grid);

  auto fibers = fiber_grid(grid, d);
  auto target_hat = target.fourier_fn();
  auto phi_hat = phi.fourier_fn();
  double tol = tolerances().abs;
  std::vector<cplx> tau(fibers.size());
  parallel_for(fibers.size(), [&](std::size_t q) {
    cplx denom = bracket(phi, phi, s, fibers[q], grid.K, nullptr);
    if (denom.real() < tol) {
      tau[q] = 0.0;  // fiber outside the spectrum: unrecoverable by design
      return;
    }
    cplx num = bracket(target_hat, phi_hat, s, fibers[q], grid.K, d, nullptr);
    tau[q] = num / denom.real();
  });

  int M = grid.fibers_per_axis();
  CoeffSeq a(d);
  double norm = 1.0 / double(fibers.size());
  int k1lo = d == 2 ? -M / 2 : 0, k1hi = d == 2 ? M / 2 - 1 : 0;
  for (int k0 = -M / 2; k0 < M / 2; ++k0) {
    for (int k1 = k1lo; k1 <= k1hi; ++k1) {
      cplx acc = 0.0;
      for (std::size_t q = 0; q < fibers.size(); ++q) {
        double phase = 2.0 * kPi * (k0 * fibers[q][0] + k1 * fibers[q][1]);
        acc += tau[q] * cplx{std::cos(phase), std::sin(phase)};
      }
      acc *= norm;
      if (std::abs(acc) > 1e-13) a.set({k0, k1}, acc);
    }
  }

  FreqFn diff = [target_hat, phi_hat, a](const Point& t) {
    cplx sym = 0.0;
    for (const auto& [k, v] : a.entries()) {
      double phase = -2.0 * kPi * (k[0] * t[0] + k[1] * t[1]);
      sym += v * cplx{std::cos(phase), std::sin(phase)};
    }
    return target_hat(t) - sym * phi_hat(t);
  };
  out.residual = sobolev_norm(diff, s, grid, d, warnings);
  out.a = std::move(a);
  return out;
}

RecoveryResult convolutor_recover(const Generator& target, const Generator& phi,
                                  double s, const GridSpec& grid,
                                  WarningSink* warnings) {
  SIFunction t;
  t.generators = {target};
  t.coeffs = {CoeffSeq::delta(target.dim())};
  t.order_s = s;
  return convolutor_recover(t, phi, s, grid, warnings);
}

cplx dual_pair(const SIFunction& F, const SIFunction& theta, double s,
               const GridSpec& grid, WarningSink* warnings) {
  F.validate();
  theta.validate();
  if (s < 0.0) throw PreconditionError("dual pairing expects the smooth side order s >= 0");
  int d = theta.dim();
  if (F.dim() != d) throw DimensionMismatch("pairing operands differ in dimension");

  auto fa = F.fourier_fn();
  auto fb = theta.fourier_fn();
  // boundary-to-peak ratio of the integrand as a truncation diagnostic
  int Nf = grid.freq_points();
  double edge = std::abs(fa(Point{grid.freq_node(0), 0.0}) *
                         std::conj(fb(Point{grid.freq_node(0), 0.0}))) +
                std::abs(fa(Point{grid.freq_node(Nf - 1), 0.0}) *
                         std::conj(fb(Point{grid.freq_node(Nf - 1), 0.0})));
  double peak = std::abs(fa(Point{0.0, 0.0}) * std::conj(fb(Point{0.0, 0.0})));
  if (peak > 0.0 && edge > 1e-6 * peak)
    warn(warnings, "dual pairing: integrand not negligible at the frequency cutoff");

  return freq_quadrature(fa, fb, 0.0, grid, d);
}

}  // namespace sispace
