#include "sispace/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sispace/kernels.hpp"

namespace sispace {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double t) {
  if (std::abs(t) < 1e-8) {
    double pt = kPi * t;
    return 1.0 - pt * pt / 6.0;
  }
  return std::sin(kPi * t) / (kPi * t);
}

// Centered cardinal B-spline of order n (n-fold convolution of the unit box),
// supported on [-n/2, n/2].
double bspline_eval(int n, double x) {
  double u = x + n / 2.0;
  if (u <= 0.0 || u >= n) return 0.0;
  double fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;
  double acc = 0.0, binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    double base = u - k;
    if (base > 0.0) acc += (k % 2 ? -binom : binom) * std::pow(base, n - 1);
    binom = binom * (n - k) / (k + 1);
  }
  return acc / fact;
}

cplx unit_exp(double phase) { return {std::cos(phase), std::sin(phase)}; }

// Apply a 1-D transform along each axis of a (possibly 2-D, row-major) array.
// rows/cols describe the input; the matrix maps in-length -> out-length.
std::vector<cplx> apply_separable(const std::vector<cplx>& in, int dim, int n_in,
                                  int n_out,
                                  const std::function<cplx(int out, int in)>& mat) {
  if (dim == 1) {
    std::vector<cplx> out(n_out);
    for (int j = 0; j < n_out; ++j) {
      cplx acc = 0.0;
      for (int i = 0; i < n_in; ++i) acc += mat(j, i) * in[i];
      out[j] = acc;
    }
    return out;
  }
  // axis 0 (rows), then axis 1 (columns)
  std::vector<cplx> mid(std::size_t(n_out) * n_in);
  parallel_for(std::size_t(n_in), [&](std::size_t col) {
    for (int j = 0; j < n_out; ++j) {
      cplx acc = 0.0;
      for (int i = 0; i < n_in; ++i) acc += mat(j, i) * in[std::size_t(i) * n_in + col];
      mid[std::size_t(j) * n_in + col] = acc;
    }
  });
  std::vector<cplx> out(std::size_t(n_out) * n_out);
  parallel_for(std::size_t(n_out), [&](std::size_t row) {
    for (int j = 0; j < n_out; ++j) {
      cplx acc = 0.0;
      for (int i = 0; i < n_in; ++i) acc += mat(j, i) * mid[row * n_in + i];
      out[row * n_out + j] = acc;
    }
  });
  return out;
}

}  // namespace

// --- Generator ---------------------------------------------------------------

Generator Generator::gaussian(double sigma, int dim) {
  Generator g;
  g.kind_ = Kind::Gaussian;
  g.dim_ = dim;
  g.sigma_ = sigma;
  if (sigma <= 0.0) throw PreconditionError("gaussian width must be positive");
  return g;
}

Generator Generator::bspline(int order, int dim) {
  Generator g;
  g.kind_ = Kind::BSpline;
  g.dim_ = dim;
  g.order_ = order;
  if (order < 1) throw PreconditionError("B-spline order must be >= 1");
  return g;
}

Generator Generator::band_limited(double cutoff, int dim) {
  Generator g;
  g.kind_ = Kind::BandLimited;
  g.dim_ = dim;
  g.cutoff_ = cutoff;
  if (cutoff <= 0.0) throw PreconditionError("band limit cutoff must be positive");
  return g;
}

Generator Generator::grid_sampled(const GridSpec& grid, std::vector<cplx> space_vals,
                                  int dim) {
  grid.validate();
  Generator g;
  g.kind_ = Kind::GridSampled;
  g.dim_ = dim;
  g.grid_ = grid;
  std::size_t n = std::size_t(grid.space_points());
  if (dim == 2) n *= n;
  if (space_vals.size() != n)
    throw PreconditionError("grid-sampled generator: sample count does not match grid");
  g.space_vals_ = std::move(space_vals);
  g.freq_vals_ = forward_dft(grid, g.space_vals_, dim);
  return g;
}

Generator Generator::from_freq_samples(const GridSpec& grid, std::vector<cplx> freq_vals,
                                       int dim) {
  grid.validate();
  Generator g;
  g.kind_ = Kind::GridSampled;
  g.dim_ = dim;
  g.grid_ = grid;
  std::size_t n = std::size_t(grid.freq_points());
  if (dim == 2) n *= n;
  if (freq_vals.size() != n)
    throw PreconditionError("grid-sampled generator: frequency sample count mismatch");
  g.freq_vals_ = std::move(freq_vals);
  g.space_vals_ = inverse_dft(grid, g.freq_vals_, dim);
  return g;
}

cplx Generator::evaluate(const Point& x) const {
  switch (kind_) {
    case Kind::Gaussian:
      return std::exp(-kPi * norm_sq(x) / (sigma_ * sigma_));
    case Kind::BSpline: {
      double v = bspline_eval(order_, x[0]);
      if (dim_ == 2) v *= bspline_eval(order_, x[1]);
      return v;
    }
    case Kind::BandLimited: {
      double v = 2.0 * cutoff_ * sinc(2.0 * cutoff_ * x[0]);
      if (dim_ == 2) v *= 2.0 * cutoff_ * sinc(2.0 * cutoff_ * x[1]);
      return v;
    }
    case Kind::GridSampled: {
      // exact node -> stored sample, otherwise band-limited resummation
      int n0 = int(std::lround(grid_.R / grid_.h));
      double i0 = x[0] / grid_.h + n0;
      double i1 = dim_ == 2 ? x[1] / grid_.h + n0 : 0.0;
      int N = grid_.space_points();
      bool on_node = std::abs(i0 - std::round(i0)) < 1e-9 &&
                     (dim_ == 1 || std::abs(i1 - std::round(i1)) < 1e-9);
      if (on_node) {
        long r = std::lround(i0), c = std::lround(i1);
        if (r >= 0 && r < N && (dim_ == 1 || (c >= 0 && c < N)))
          return dim_ == 1 ? space_vals_[std::size_t(r)]
                           : space_vals_[std::size_t(r) * N + c];
        return 0.0;
      }
      double dt = grid_.freq_step();
      int Nf = grid_.freq_points();
      cplx acc = 0.0;
      if (dim_ == 1) {
        for (int j = 0; j < Nf; ++j)
          acc += freq_vals_[std::size_t(j)] * unit_exp(2.0 * kPi * grid_.freq_node(j) * x[0]);
        return acc * dt;
      }
      for (int j0 = 0; j0 < Nf; ++j0)
        for (int j1 = 0; j1 < Nf; ++j1)
          acc += freq_vals_[std::size_t(j0) * Nf + j1] *
                 unit_exp(2.0 * kPi * (grid_.freq_node(j0) * x[0] + grid_.freq_node(j1) * x[1]));
      return acc * dt * dt;
    }
  }
  return 0.0;
}

cplx Generator::fourier(const Point& t) const {
  switch (kind_) {
    case Kind::Gaussian: {
      double amp = std::pow(sigma_, dim_);
      return amp * std::exp(-kPi * sigma_ * sigma_ * norm_sq(t));
    }
    case Kind::BSpline: {
      double v = std::pow(sinc(t[0]), order_);
      if (dim_ == 2) v *= std::pow(sinc(t[1]), order_);
      return v;
    }
    case Kind::BandLimited: {
      bool inside = std::abs(t[0]) <= cutoff_ && (dim_ == 1 || std::abs(t[1]) <= cutoff_);
      return inside ? 1.0 : 0.0;
    }
    case Kind::GridSampled: {
      if (std::abs(t[0]) > grid_.freq_radius + 1e-12 ||
          (dim_ == 2 && std::abs(t[1]) > grid_.freq_radius + 1e-12))
        return 0.0;
      int jmid = int(std::lround(grid_.freq_radius * 2.0 * grid_.R));
      double j0 = t[0] / grid_.freq_step() + jmid;
      double j1 = dim_ == 2 ? t[1] / grid_.freq_step() + jmid : 0.0;
      int Nf = grid_.freq_points();
      bool on_node = std::abs(j0 - std::round(j0)) < 1e-9 &&
                     (dim_ == 1 || std::abs(j1 - std::round(j1)) < 1e-9);
      if (on_node) {
        long r = std::lround(j0), c = std::lround(j1);
        return dim_ == 1 ? freq_vals_[std::size_t(r)]
                         : freq_vals_[std::size_t(r) * Nf + c];
      }
      // off-grid frequency: direct transform of the space samples
      int N = grid_.space_points();
      cplx acc = 0.0;
      if (dim_ == 1) {
        for (int i = 0; i < N; ++i)
          acc += space_vals_[std::size_t(i)] * unit_exp(-2.0 * kPi * grid_.space_node(i) * t[0]);
        return acc * grid_.h;
      }
      for (int i0 = 0; i0 < N; ++i0)
        for (int i1 = 0; i1 < N; ++i1)
          acc += space_vals_[std::size_t(i0) * N + i1] *
                 unit_exp(-2.0 * kPi * (grid_.space_node(i0) * t[0] + grid_.space_node(i1) * t[1]));
      return acc * grid_.h * grid_.h;
    }
  }
  return 0.0;
}

double Generator::linf_periodization(int K, int cell_samples) const {
  double sup = 0.0;
  int n1 = dim_ == 2 ? cell_samples : 1;
  for (int a = 0; a < cell_samples; ++a) {
    for (int b = 0; b < n1; ++b) {
      Point x{double(a) / cell_samples, dim_ == 2 ? double(b) / cell_samples : 0.0};
      double total = 0.0;
      int j1lo = dim_ == 2 ? -K : 0, j1hi = dim_ == 2 ? K : 0;
      for (int j0 = -K; j0 <= K; ++j0)
        for (int j1 = j1lo; j1 <= j1hi; ++j1)
          total += std::abs(evaluate(Point{x[0] + j0, x[1] + j1}));
      sup = std::max(sup, total);
    }
  }
  return sup;
}

// --- PeriodicSymbol / SIFunction ----------------------------------------------

cplx PeriodicSymbol::eval(const Point& t) const {
  cplx acc = 0.0;
  for (const auto& [k, v] : coeffs.entries())
    acc += v * unit_exp(-2.0 * kPi * dot(to_point(k), t));
  return acc;
}

void SIFunction::validate() const {
  if (generators.size() != coeffs.size())
    throw PreconditionError("SIFunction: generator and coefficient counts differ");
  for (const auto& c : coeffs)
    if (c.dim() != dim())
      throw DimensionMismatch("SIFunction: coefficient dimension mismatch");
}

cplx SIFunction::evaluate(const Point& x) const {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (const auto& [k, v] : coeffs[i].entries())
      acc += v * generators[i].evaluate(Point{x[0] - k[0], x[1] - k[1]});
  return acc;
}

cplx SIFunction::fourier(const Point& t) const {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    PeriodicSymbol tau{coeffs[i]};
    acc += tau.eval(t) * generators[i].fourier(t);
  }
  return acc;
}

// --- transforms ----------------------------------------------------------------

std::vector<cplx> forward_dft(const GridSpec& grid, const std::vector<cplx>& space_vals,
                              int dim) {
  grid.validate();
  int N = grid.space_points(), Nf = grid.freq_points();
  double h = grid.h;
  auto mat = [&](int j, int i) {
    return h * unit_exp(-2.0 * kPi * grid.space_node(i) * grid.freq_node(j));
  };
  return apply_separable(space_vals, dim, N, Nf, mat);
}

std::vector<cplx> inverse_dft(const GridSpec& grid, const std::vector<cplx>& freq_vals,
                              int dim) {
  grid.validate();
  int N = grid.space_points(), Nf = grid.freq_points();
  double dt = grid.freq_step();
  auto mat = [&](int i, int j) {
    return dt * unit_exp(2.0 * kPi * grid.space_node(i) * grid.freq_node(j));
  };
  return apply_separable(freq_vals, dim, Nf, N, mat);
}

std::vector<cplx> sample_freq(const FreqFn& fn, const GridSpec& grid, int dim) {
  int Nf = grid.freq_points();
  if (dim == 1) {
    std::vector<cplx> out(static_cast<std::size_t>(Nf));
    parallel_for(std::size_t(Nf),
                 [&](std::size_t j) { out[j] = fn(Point{grid.freq_node(int(j)), 0.0}); });
    return out;
  }
  std::vector<cplx> out(std::size_t(Nf) * Nf);
  parallel_for(std::size_t(Nf), [&](std::size_t j0) {
    for (int j1 = 0; j1 < Nf; ++j1)
      out[j0 * Nf + j1] = fn(Point{grid.freq_node(int(j0)), grid.freq_node(j1)});
  });
  return out;
}

std::vector<cplx> generator_fourier(const Generator& phi, const GridSpec& grid,
                                    WarningSink* warnings) {
  grid.validate();
  auto samples = sample_freq(phi.fourier_fn(), grid, phi.dim());
  if (phi.kind() != Generator::Kind::GridSampled) {
    // tail estimate on an extended 1-D ray (analytic kinds are tensor/radial)
    double inside = 0.0, outside = 0.0;
    double dt = grid.freq_step();
    for (double t = 0.0; t <= 4.0 * grid.freq_radius; t += dt) {
      double e = std::norm(phi.fourier(Point{t, 0.0}));
      (t <= grid.freq_radius ? inside : outside) += e;
    }
    if (inside > 0.0 && outside > 1e-6 * (inside + outside))
      warn(warnings, "aliasing: spectral energy beyond freq_radius exceeds 1e-6 of total");
  }
  return samples;
}

double sobolev_norm(const FreqFn& fhat, double s, const GridSpec& grid, int dim,
                    WarningSink* warnings) {
  auto samples = sample_freq(fhat, grid, dim);
  int Nf = grid.freq_points();
  std::vector<double> w(samples.size());
  if (dim == 1) {
    for (int j = 0; j < Nf; ++j) w[std::size_t(j)] = weight_eval(2.0 * s, grid.freq_node(j));
  } else {
    for (int j0 = 0; j0 < Nf; ++j0)
      for (int j1 = 0; j1 < Nf; ++j1)
        w[std::size_t(j0) * Nf + j1] =
            weight_eval(2.0 * s, Point{grid.freq_node(j0), grid.freq_node(j1)});
  }
  double cell = std::pow(grid.freq_step(), dim);
  double total = kernels::weighted_norm_sq(samples.data(), w.data(), samples.size());
  // truncation check: compare boundary shell against the bulk
  double edge = 0.0;
  if (dim == 1) {
    edge = std::norm(samples.front()) + std::norm(samples.back());
  } else {
    for (int j = 0; j < Nf; ++j)
      edge += std::norm(samples[std::size_t(j)]) +
              std::norm(samples[std::size_t(Nf - 1) * Nf + j]);
  }
  if (total > 0.0 && edge * grid.freq_points() > 1e-6 * total)
    warn(warnings, "truncation: boundary frequency content is not negligible");
  return std::sqrt(total * cell);
}

double sobolev_norm(const Generator& phi, double s, const GridSpec& grid,
                    WarningSink* warnings) {
  return sobolev_norm(phi.fourier_fn(), s, grid, phi.dim(), warnings);
}

double sobolev_norm(const SIFunction& f, double s, const GridSpec& grid,
                    WarningSink* warnings) {
  f.validate();
  return sobolev_norm(f.fourier_fn(), s, grid, f.dim(), warnings);
}

cplx bracket(const FreqFn& phihat, const FreqFn& psihat, double s, const Point& omega,
             int K, int dim, WarningSink* warnings) {
  if (K < 1) throw PreconditionError("bracket requires K >= 1");
  cplx acc = 0.0, shell = 0.0;
  int k1lo = dim == 2 ? -K : 0, k1hi = dim == 2 ? K : 0;
  for (int k0 = -K; k0 <= K; ++k0) {
    for (int k1 = k1lo; k1 <= k1hi; ++k1) {
      Point t{omega[0] + k0, dim == 2 ? omega[1] + k1 : 0.0};
      cplx term = phihat(t) * std::conj(psihat(t)) * weight_eval(2.0 * s, t);
      acc += term;
      if (std::max(std::abs(k0), std::abs(k1)) == K) shell += term;
    }
  }
  if (std::abs(acc) > 0.0 && std::abs(shell) > 1e-8 * std::abs(acc))
    warn(warnings, "bracket tail: |k| = K shell contributes more than 1e-8 relative");
  return acc;
}

cplx bracket(const Generator& phi, const Generator& psi, double s, const Point& omega,
             int K, WarningSink* warnings) {
  if (phi.dim() != psi.dim()) throw DimensionMismatch("bracket requires equal dimensions");
  return bracket(phi.fourier_fn(), psi.fourier_fn(), s, omega, K, phi.dim(), warnings);
}

cplx bracket(const Generator& phi, const Generator& psi, double s, double omega, int K,
             WarningSink* warnings) {
  return bracket(phi, psi, s, Point{omega, 0.0}, K, warnings);
}

cplx freq_quadrature(const FreqFn& a, const FreqFn& b, double weight_order,
                     const GridSpec& grid, int dim) {
  auto sa = sample_freq(a, grid, dim);
  auto sb = sample_freq(b, grid, dim);
  int Nf = grid.freq_points();
  std::vector<double> w(sa.size());
  if (dim == 1) {
    for (int j = 0; j < Nf; ++j) w[std::size_t(j)] = weight_eval(weight_order, grid.freq_node(j));
  } else {
    for (int j0 = 0; j0 < Nf; ++j0)
      for (int j1 = 0; j1 < Nf; ++j1)
        w[std::size_t(j0) * Nf + j1] =
            weight_eval(weight_order, Point{grid.freq_node(j0), grid.freq_node(j1)});
  }
  cplx acc = kernels::weighted_cdot(sa.data(), sb.data(), w.data(), sa.size());
  return acc * std::pow(grid.freq_step(), dim);
}

}  // namespace sispace
