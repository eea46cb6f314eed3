#include "sispace/multproduct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sispace/kernels.hpp"

namespace sispace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundLimit = 1e6;  // a constant this large means "unbounded"

// central difference of total multi-index order (a0, a1), relative step
cplx finite_diff(const FreqFn& a, const Point& t, int a0, int a1, double delta) {
  if (a0 > 0) {
    Point tp = t, tm = t;
    tp[0] += delta;
    tm[0] -= delta;
    return (finite_diff(a, tp, a0 - 1, a1, delta) -
            finite_diff(a, tm, a0 - 1, a1, delta)) /
           (2.0 * delta);
  }
  if (a1 > 0) {
    Point tp = t, tm = t;
    tp[1] += delta;
    tm[1] -= delta;
    return (finite_diff(a, tp, a0, a1 - 1, delta) -
            finite_diff(a, tm, a0, a1 - 1, delta)) /
           (2.0 * delta);
  }
  return a(t);
}

}  // namespace

MultiplierSymbol MultiplierSymbol::constant(cplx value) {
  return {[value](const Point&) { return value; }};
}

MultiplierSymbol MultiplierSymbol::riesz(int axis) {
  return {[axis](const Point& t) {
    return cplx{t[std::size_t(axis)] / weight_eval(1.0, t), 0.0};
  }};
}

MultiplierSymbol MultiplierSymbol::shift(const Point& h0) {
  return {[h0](const Point& t) {
    double phase = -2.0 * kPi * dot(t, h0);
    return cplx{std::cos(phase), std::sin(phase)};
  }};
}

MikhlinReport mikhlin_check(const MultiplierSymbol& a, const GridSpec& grid, int dim) {
  int max_order = dim / 2 + 1;
  MikhlinReport rep;
  rep.constants.assign(std::size_t(max_order) + 1, 0.0);

  // dyadic radii 2^-10 .. 2^20, eight directions in d=2
  std::vector<Point> dirs;
  if (dim == 1) {
    dirs = {{1.0, 0.0}, {-1.0, 0.0}};
  } else {
    for (int k = 0; k < 8; ++k) {
      double th = 2.0 * kPi * k / 8.0;
      dirs.push_back({std::cos(th), std::sin(th)});
    }
  }
  for (int m = -40; m <= 80; ++m) {  // quarter-octave steps, 2^-10 .. 2^20
    double r = std::pow(2.0, m / 4.0);
    double delta = 1e-3 * r;  // relative step keeps |t|^alpha d^alpha scale-true
    for (const auto& dir : dirs) {
      Point t{r * dir[0], r * dir[1]};
      for (int order = 0; order <= max_order; ++order) {
        double worst = 0.0;
        for (int a0 = 0; a0 <= order; ++a0) {
          int a1 = order - a0;
          if (dim == 1 && a1 > 0) continue;
          worst = std::max(worst, std::abs(finite_diff(a.a, t, a0, a1, delta)));
        }
        double c = std::pow(r, order) * worst;
        rep.constants[std::size_t(order)] =
            std::max(rep.constants[std::size_t(order)], c);
      }
    }
  }
  rep.verdict = std::all_of(rep.constants.begin(), rep.constants.end(), [](double c) {
    return std::isfinite(c) && c < kBoundLimit;
  });
  // finite-difference noise on a genuinely constant symbol reads as tiny
  // nonzero derivatives; snap those to zero
  for (double& c : rep.constants)
    if (c < 1e-8) c = 0.0;
  return rep;
}

SIFunction apply_multiplier(const MultiplierSymbol& a, const SIFunction& f,
                            const GridSpec& grid, bool force, WarningSink* warnings) {
  f.validate();
  int d = f.dim();
  auto rep = mikhlin_check(a, grid, d);
  if (!rep.verdict) {
    if (!force)
      throw PreconditionError(
          "multiplier fails the derivative-decay bound; pass force to apply anyway");
    warn(warnings, "applying a multiplier that fails the derivative-decay bound");
  }

  SIFunction out;
  out.order_s = f.order_s;
  out.coeffs = f.coeffs;
  out.generators.reserve(f.generators.size());
  auto amps = sample_freq(a.a, grid, d);
  for (const auto& phi : f.generators) {
    auto fs = generator_fourier(phi, grid, warnings);
    std::vector<cplx> prod(fs.size());
    kernels::cmul(amps.data(), fs.data(), prod.data(), fs.size());
    out.generators.push_back(Generator::from_freq_samples(grid, std::move(prod), d));
  }
  return out;
}

PeriodicMultiplier PeriodicMultiplier::trig(CoeffSeq coeffs, int p) {
  PeriodicMultiplier g;
  g.g.coeffs = std::move(coeffs);
  g.p = p;
  return g;
}

PeriodicMultiplier PeriodicMultiplier::spline(int q, int K) {
  // periodized B-spline: Fourier coefficients sinc(k)^q, real and even
  auto sinc = [](double x) {
    if (x == 0.0) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
  };
  CoeffSeq c(1);
  for (int k = -K; k <= K; ++k) {
    double v = std::pow(sinc(k), q);
    if (std::abs(v) > 1e-16) c.set({k, 0}, v);
  }
  PeriodicMultiplier g;
  g.g.coeffs = std::move(c);
  g.p = q - 1;
  return g;
}

SIFunction periodic_multiply(const PeriodicMultiplier& g, const SIFunction& f,
                             const GridSpec& grid, WarningSink* warnings) {
  f.validate();
  double s = f.order_s;
  if (s < 0.0 || s != std::floor(s))
    throw OrderViolation("periodic products need a nonnegative integer order");
  if (g.g.coeffs.dim() != f.dim())
    throw DimensionMismatch("periodic factor dimension differs from the function");

  int d = f.dim();
  SIFunction out;
  out.order_s = std::min(double(g.p), s);
  out.coeffs = f.coeffs;
  int N = grid.space_points();
  std::size_t total = d == 1 ? std::size_t(N) : std::size_t(N) * std::size_t(N);
  for (const auto& phi : f.generators) {
    std::vector<cplx> vals(total);
    if (d == 1) {
      for (int i = 0; i < N; ++i) {
        Point x{grid.space_node(i), 0.0};
        vals[std::size_t(i)] = g.eval(x) * phi.evaluate(x);
      }
    } else {
      for (int i0 = 0; i0 < N; ++i0)
        for (int i1 = 0; i1 < N; ++i1) {
          Point x{grid.space_node(i0), grid.space_node(i1)};
          vals[std::size_t(i0) * std::size_t(N) + std::size_t(i1)] =
              g.eval(x) * phi.evaluate(x);
        }
    }
    out.generators.push_back(Generator::grid_sampled(grid, std::move(vals), d));
  }
  (void)warnings;
  return out;
}

std::vector<cplx> periodic_product_spectrum(const PeriodicMultiplier& g,
                                            const Generator& phi, const GridSpec& grid) {
  int d = phi.dim();
  auto fn = [&](const Point& t) {
    cplx acc = 0.0;
    for (const auto& [k, v] : g.g.coeffs.entries()) {
      Point tk{t[0] + k[0], d == 2 ? t[1] + k[1] : 0.0};
      acc += v * phi.fourier(tk);
    }
    return acc;
  };
  return sample_freq(fn, grid, d);
}

PeriodicSymbol symbol_product(const PeriodicSymbol& t1, const PeriodicSymbol& t2) {
  if (1.0 / t1.p + 1.0 / t2.p < 1.0 - 1e-12)
    throw ExponentViolation(
        "symbol product needs 1/p1 + 1/p2 >= 1 for the output exponent to exist");
  if (t1.r + t2.r < -1e-12)
    throw ExponentViolation("symbol product needs weight orders with r1 + r2 >= 0");
  PeriodicSymbol out;
  out.coeffs = seq_convolve(t1.coeffs, t2.coeffs);
  double inv = 1.0 / t1.p + 1.0 / t2.p - 1.0;
  out.p = inv <= 1e-15 ? std::numeric_limits<double>::infinity() : 1.0 / inv;
  out.r = std::min(t1.r, t2.r);
  return out;
}

}  // namespace sispace
