#pragma once
// Differential-difference operators T = sum a delta^{(j)}(. - b) on the line:
// symbol evaluation, ellipticity estimation (a c > 0 and order n with
// c mu_n(t) <= |That(t)|), and solution of T * u = h by spectral division.

#include <optional>
#include <vector>

#include "sispace/spectral.hpp"

namespace sispace {

struct DDETerm {
  cplx a{1.0, 0.0};  // amplitude
  int j = 0;         // derivative order
  double b = 0.0;    // shift
};

struct DelayDiffOperator {
  std::vector<DDETerm> terms;
};

struct EllipticityEstimate {
  double c = 0.0;
  double n = 0.0;
  bool verdict = false;
  double min_ratio_location = 0.0;  // frequency where |That| / mu_n is minimal
  double fit_rms = 0.0;
};

struct DDESolution {
  Generator u;           // fundamental solution profile, psi_hat / T_hat
  SIFunction solution;   // sum c_k u(. - k), order s + n
  double residual = 0.0; // sup over space nodes of |T * solution - h|
};

// That(t) = sum a (2 pi i t)^j e^{-2 pi i b t}
cplx dde_symbol(const DelayDiffOperator& T, double t);

// Fits n as the log-log slope of |That| against mu_1 on the outer half of an
// extended frequency ladder (rounded to 0.05), then c = min |That| / mu_n over
// the grid. Pass n_override to skip the fit. Throws FitUnstable when the
// log-log residual shows the symbol has no power-law envelope.
EllipticityEstimate estimate_condition_E(const DelayDiffOperator& T, const GridSpec& grid,
                                         std::optional<double> n_override = std::nullopt);

// Solves T * u = psi per fiber and assembles sum c_k u(. - k) solving
// T * solution = sum c_k psi(. - k). psi must be a real-analytic kind
// (gaussian or band_limited).
DDESolution dde_solve(const DelayDiffOperator& T, const Generator& psi, const CoeffSeq& c,
                      double s, const GridSpec& grid, WarningSink* warnings = nullptr);

}  // namespace sispace
