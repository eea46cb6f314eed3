#pragma once
// Fourier multipliers (Mikhlin-type bound check and application), periodic
// products g*f with smoothness bookkeeping, and the periodic symbol algebra
// with Young exponent arithmetic.

#include <vector>

#include "sispace/spectral.hpp"

namespace sispace {

struct MultiplierSymbol {
  FreqFn a;  // bounded function of frequency

  static MultiplierSymbol constant(cplx value);
  // t_axis / mu_1(t): the canonical bounded symbol with decaying derivative
  static MultiplierSymbol riesz(int axis = 0);
  // pure shift e^{-2 pi i <t, h0>}
  static MultiplierSymbol shift(const Point& h0);
};

struct MikhlinReport {
  bool verdict = false;
  // constants[alpha] = sup over the dyadic ladder of |t|^alpha |d^alpha a(t)|,
  // alpha = 0 .. floor(d/2)+1 (in d=2 the max over multi-indices of that
  // total order)
  std::vector<double> constants;
};

MikhlinReport mikhlin_check(const MultiplierSymbol& a, const GridSpec& grid, int dim);

// T_a f: generators become F^{-1}(a * phihat); coefficients are copied
// bit-exactly and the order is unchanged. Requires the Mikhlin verdict unless
// force is set (then it only warns).
SIFunction apply_multiplier(const MultiplierSymbol& a, const SIFunction& f,
                            const GridSpec& grid, bool force = false,
                            WarningSink* warnings = nullptr);

// Periodic factor g(x) = sum_k c_k e^{-2 pi i <k, x>} with p bounded
// derivatives.
struct PeriodicMultiplier {
  PeriodicSymbol g;
  int p = 0;

  static PeriodicMultiplier trig(CoeffSeq coeffs, int p);
  // periodization of the order-q B-spline, truncated at |k| <= K; it has
  // q - 1 bounded derivatives
  static PeriodicMultiplier spline(int q, int K = 32);

  cplx eval(const Point& x) const { return g.eval(x); }
};

// g * f lands at order min{p, s}; generators are the space-grid products
// g(x) phi_i(x). Requires s a nonnegative integer.
SIFunction periodic_multiply(const PeriodicMultiplier& g, const SIFunction& f,
                             const GridSpec& grid, WarningSink* warnings = nullptr);

// Frequency-side path for one generator: (g phi)^(t) = sum_k c_k phihat(t+k)
// sampled on the grid's frequency nodes. Cross-checks the space path.
std::vector<cplx> periodic_product_spectrum(const PeriodicMultiplier& g,
                                            const Generator& phi, const GridSpec& grid);

// Pointwise product of symbols: coefficients convolve; exponents follow
// 1/p = 1/p1 + 1/p2 - 1 and r = min{r1, r2}. Requires 1/p1 + 1/p2 >= 1 and
// r1 + r2 >= 0.
PeriodicSymbol symbol_product(const PeriodicSymbol& t1, const PeriodicSymbol& t2);

}  // namespace sispace
