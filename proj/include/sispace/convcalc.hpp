#pragma once
// Convolution calculus on shift-invariant spaces: delta-train convolution,
// generator and FGSI convolution with the order bookkeeping, convolutor
// recovery by spectral division, and the H^{-s} x H^s dual pairing.

#include <vector>

#include "sispace/spectral.hpp"

namespace sispace {

struct ConvolutionResult {
  SIFunction result;   // generator bank {phi_i * psi_j}, coefficients a^i * b^j
  double target_order = 0.0;  // s - d/2 - epsilon
  double epsilon = 0.0;
};

struct AnnihilatorZero {
  Point t{0.0, 0.0};
  int multiplicity = 1;
};

// Discrete zero set of a generator's Fourier transform; point masses (and
// derivatives up to multiplicity - 1) supported here annihilate the space.
struct AnnihilatorSpectrum {
  std::vector<AnnihilatorZero> zeros;
};

struct RecoveryResult {
  CoeffSeq a{1};
  AnnihilatorSpectrum spectrum;
  double residual = 0.0;
};

// (a * g) for an l^1_r delta train a; requires order(g) <= r.
SIFunction delta_train_convolve(const CoeffSeq& a, const SIFunction& g, double r);

// Pointwise-frequency product phihat * psihat sampled on the grid.
Generator generator_convolve(const Generator& phi, const Generator& psi,
                             const GridSpec& grid, WarningSink* warnings = nullptr);

// f * g with f of order s, g of order r; requires d/2 < s <= r and
// 0 < eps <= s - d/2. Output lands at order s - d/2 - eps.
ConvolutionResult fgsi_convolve(const SIFunction& f, const SIFunction& g, double eps,
                                const GridSpec& grid, WarningSink* warnings = nullptr);

// Given target = f * phi with f a delta train, recover the train by per-fiber
// division restricted to fibers where [phi,phi]_s clears the tolerance.
RecoveryResult convolutor_recover(const SIFunction& target, const Generator& phi,
                                  double s, const GridSpec& grid,
                                  WarningSink* warnings = nullptr);
RecoveryResult convolutor_recover(const Generator& target, const Generator& phi,
                                  double s, const GridSpec& grid,
                                  WarningSink* warnings = nullptr);

// Zero scan of phihat over the frequency grid with multiplicity estimation.
// Throws NonDiscreteZeroSet when sub-tolerance nodes form extended regions.
AnnihilatorSpectrum annihilator_spectrum(const Generator& phi, const GridSpec& grid);

// (F, theta) = integral of Fhat conj(thetahat); F carries H^{-s} semantics.
cplx dual_pair(const SIFunction& F, const SIFunction& theta, double s,
               const GridSpec& grid, WarningSink* warnings = nullptr);

}  // namespace sispace
