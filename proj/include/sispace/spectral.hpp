#pragma once
// Generators (analytic and grid-sampled), shift-invariant functions, periodic
// symbols, direct DFTs with exact phase on [-R,R]^d, frequency quadrature and
// the periodized bracket product.

#include <functional>
#include <memory>
#include <vector>

#include "sispace/core.hpp"

namespace sispace {

// A function of frequency, evaluable anywhere. The lingua franca between
// modules: generators, shift-invariant functions and residuals all expose one.
using FreqFn = std::function<cplx(const Point&)>;

class Generator {
 public:
  enum class Kind { Gaussian, BSpline, BandLimited, GridSampled };

  static Generator gaussian(double sigma, int dim = 1);
  static Generator bspline(int order, int dim = 1);
  static Generator band_limited(double cutoff, int dim = 1);
  // Space samples on the grid (row-major for d=2); Fourier samples are
  // computed by direct DFT unless supplied.
  static Generator grid_sampled(const GridSpec& grid, std::vector<cplx> space_vals,
                                int dim);
  static Generator from_freq_samples(const GridSpec& grid, std::vector<cplx> freq_vals,
                                     int dim);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double sigma() const { return sigma_; }
  int order() const { return order_; }
  double cutoff() const { return cutoff_; }
  const GridSpec& grid() const { return grid_; }
  const std::vector<cplx>& space_samples() const { return space_vals_; }
  const std::vector<cplx>& freq_samples() const { return freq_vals_; }

  cplx evaluate(const Point& x) const;
  cplx evaluate(double x) const { return evaluate(Point{x, 0.0}); }

  // Analytic closed form for the first three kinds; for grid-sampled data the
  // cached sample when t lies on the frequency grid, zero beyond the
  // truncation radius, and a direct DFT of the space samples otherwise.
  cplx fourier(const Point& t) const;
  cplx fourier(double t) const { return fourier(Point{t, 0.0}); }

  FreqFn fourier_fn() const {
    return [g = *this](const Point& t) { return g.fourier(t); };
  }

  // sup over the unit cell of sum_{|j|<=K} |phi(x+j)|  (L^inf membership
  // diagnostic; finite for every admissible generator).
  double linf_periodization(int K, int cell_samples = 32) const;

 private:
  Kind kind_ = Kind::Gaussian;
  int dim_ = 1;
  double sigma_ = 1.0;
  int order_ = 1;
  double cutoff_ = 1.0;
  GridSpec grid_;
  std::vector<cplx> space_vals_;
  std::vector<cplx> freq_vals_;
};

// Periodic symbol tau(t) = sum_k c_k e^{-2 pi i <k,t>} with membership
// metadata (p, r) for the weighted coefficient class.
struct PeriodicSymbol {
  CoeffSeq coeffs{1};
  double p = 2.0;
  double r = 0.0;

  cplx eval(const Point& t) const;
  cplx eval(double t) const { return eval(Point{t, 0.0}); }
};

inline cplx symbol_eval(const PeriodicSymbol& tau, const Point& t) { return tau.eval(t); }

// f = sum_i sum_k c^i_k phi_i(. - k), Sobolev order s.
struct SIFunction {
  std::vector<Generator> generators;
  std::vector<CoeffSeq> coeffs;
  double order_s = 0.0;

  void validate() const;
  int dim() const { return generators.empty() ? 1 : generators.front().dim(); }

  cplx evaluate(const Point& x) const;
  cplx evaluate(double x) const { return evaluate(Point{x, 0.0}); }

  // f^hat(t) = sum_i tau_i(t) phi_i^hat(t)
  cplx fourier(const Point& t) const;
  cplx fourier(double t) const { return fourier(Point{t, 0.0}); }
  FreqFn fourier_fn() const {
    return [f = *this](const Point& t) { return f.fourier(t); };
  }
};

// --- direct DFTs with box phase ---------------------------------------------
// forward: fhat(t_j) = h^d sum_i f(x_i) e^{-2 pi i <x_i, t_j>}
// inverse: f(x_i) = dt^d sum_j fhat(t_j) e^{+2 pi i <x_i, t_j>}
std::vector<cplx> forward_dft(const GridSpec& grid, const std::vector<cplx>& space_vals,
                              int dim);
std::vector<cplx> inverse_dft(const GridSpec& grid, const std::vector<cplx>& freq_vals,
                              int dim);

// Sample any frequency function on the grid's frequency nodes (row-major).
std::vector<cplx> sample_freq(const FreqFn& fn, const GridSpec& grid, int dim);

// Closed-form samples for analytic kinds, DFT for grid-sampled data.
// Warns when spectral energy outside freq_radius exceeds 1e-6 of the total.
std::vector<cplx> generator_fourier(const Generator& phi, const GridSpec& grid,
                                    WarningSink* warnings = nullptr);

// ||f||_{H^s} by rectangle quadrature of |fhat|^2 mu_{2s} over the truncated
// frequency grid.
double sobolev_norm(const FreqFn& fhat, double s, const GridSpec& grid, int dim,
                    WarningSink* warnings = nullptr);
double sobolev_norm(const Generator& phi, double s, const GridSpec& grid,
                    WarningSink* warnings = nullptr);
double sobolev_norm(const SIFunction& f, double s, const GridSpec& grid,
                    WarningSink* warnings = nullptr);

// [phi, psi]_s(omega) = sum_{|k|_inf <= K} phihat(omega+k) conj(psihat(omega+k))
//                       mu_{2s}(omega+k)
cplx bracket(const FreqFn& phihat, const FreqFn& psihat, double s, const Point& omega,
             int K, int dim, WarningSink* warnings = nullptr);
cplx bracket(const Generator& phi, const Generator& psi, double s, const Point& omega,
             int K, WarningSink* warnings = nullptr);
cplx bracket(const Generator& phi, const Generator& psi, double s, double omega, int K,
             WarningSink* warnings = nullptr);

// Frequency-domain quadrature sum dt^d * sum_j a(t_j) conj(b(t_j)) w(t_j).
cplx freq_quadrature(const FreqFn& a, const FreqFn& b, double weight_order,
                     const GridSpec& grid, int dim);

}  // namespace sispace
