#pragma once
// Gramian fibers over the torus, frame bounds and spectrum, the numerical
// surrogate for the closedness condition, per-fiber least-squares projection
// onto FGSI spaces, and transition-matrix regularity.

#include <map>

#include "sispace/spectral.hpp"

namespace sispace {

enum class Verdict { Consistent, Violated, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct FrameReport {
  double lower_A = 0.0;
  double upper_B = 0.0;
  double spectrum_measure = 0.0;          // fraction of fibers with positive rank
  std::map<int, int> fiber_rank_profile;  // rank -> fiber count
  Verdict verdict = Verdict::Inconclusive;
};

// G(omega)_{ij} = [phi_i, phi_j]_s(omega); Hermitian PSD, row-major m x m.
std::vector<cplx> gramian_fiber(const std::vector<Generator>& bank, double s,
                                const Point& omega, int K,
                                WarningSink* warnings = nullptr);

FrameReport frame_bounds(const std::vector<Generator>& bank, double s,
                         const GridSpec& grid, WarningSink* warnings = nullptr);

struct ConditionAReport {
  FrameReport closedness;  // weight order 0 (closedness of the Fourier image)
  FrameReport frame;       // weight order s
  std::vector<double> linf_diagnostic;  // per generator
  Verdict verdict = Verdict::Inconclusive;
};

ConditionAReport check_condition_A(const std::vector<Generator>& bank, double s,
                                   const GridSpec& grid,
                                   WarningSink* warnings = nullptr);

struct ProjectionResult {
  SIFunction projection;
  double residual_norm = 0.0;
  double max_fiber_condition = 0.0;
  int ill_conditioned_fibers = 0;
};

// Best approximation in V_s(bank): solve G(omega) tau(omega) = b(omega) on
// every fiber (pseudoinverse below the eigenvalue cutoff), then inverse-DFT
// the symbols to lattice coefficients.
ProjectionResult project(const FreqFn& target_hat, int dim,
                         const std::vector<Generator>& bank, double s,
                         const GridSpec& grid, WarningSink* warnings = nullptr);
ProjectionResult project(const Generator& target, const std::vector<Generator>& bank,
                         double s, const GridSpec& grid,
                         WarningSink* warnings = nullptr);
ProjectionResult project(const SIFunction& target, const std::vector<Generator>& bank,
                         double s, const GridSpec& grid,
                         WarningSink* warnings = nullptr);

struct TransitionMatrix {
  int m = 1;
  int dim = 1;
  std::vector<PeriodicSymbol> entries;  // row-major m x m

  const PeriodicSymbol& at(int i, int j) const { return entries[std::size_t(i) * m + j]; }
  static TransitionMatrix identity(int m, int dim = 1);
};

struct RegularityReport {
  bool regular = true;
  double min_abs_det = 0.0;
  std::vector<std::pair<Point, double>> singular_points;  // (omega, |det|)
};

RegularityReport transition_regularity(const TransitionMatrix& A, const GridSpec& grid);

struct SameSpaceReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> residuals_psi_onto_phi;
  std::vector<double> residuals_phi_onto_psi;
  double support_symmetric_difference = 0.0;  // fraction of frequency nodes
};

SameSpaceReport same_space_check(const std::vector<Generator>& phi,
                                 const std::vector<Generator>& psi, double s,
                                 const GridSpec& grid,
                                 WarningSink* warnings = nullptr);

}  // namespace sispace
