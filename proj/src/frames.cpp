#include "sispace/frames.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace sispace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRankEps = 1e-12;  // machine-zero cutoff for fiber rank

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// All fibers omega_q = q/M (per axis), q = 0..M-1.
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

Matrix gramian_matrix(const std::vector<Generator>& bank, double s, const Point& omega,
                      int K, WarningSink* warnings) {
  int m = int(bank.size());
  Matrix G(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      cplx v = bracket(bank[std::size_t(i)], bank[std::size_t(j)], s, omega, K, warnings);
      G(i, j) = v;
      G(j, i) = std::conj(v);
    }
  }
  return G;
}

}  // namespace

std::vector<cplx> gramian_fiber(const std::vector<Generator>& bank, double s,
                                const Point& omega, int K, WarningSink* warnings) {
  Matrix G = gramian_matrix(bank, s, omega, K, warnings);
  std::vector<cplx> out(std::size_t(G.size()));
  int m = int(bank.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out[std::size_t(i) * m + j] = G(i, j);
  return out;
}

FrameReport frame_bounds(const std::vector<Generator>& bank, double s,
                         const GridSpec& grid, WarningSink* warnings) {
  grid.validate();
  if (bank.empty()) throw PreconditionError("frame_bounds requires a nonempty bank");
  int dim = bank.front().dim();
  auto fibers = fiber_grid(grid, dim);
  int m = int(bank.size());

  std::vector<std::vector<double>> eigs(fibers.size());
  parallel_for(fibers.size(), [&](std::size_t q) {
    Matrix G = gramian_matrix(bank, s, fibers[q], grid.K, nullptr);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(G);
    eigs[q].assign(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
  });

  FrameReport rep;
  double A = std::numeric_limits<double>::infinity(), B = 0.0;
  std::size_t in_spectrum = 0;
  for (const auto& lam : eigs) {
    int rank = 0;
    for (double l : lam) {
      if (l > kRankEps) {
        ++rank;
        A = std::min(A, l);
        B = std::max(B, l);
      }
    }
    rep.fiber_rank_profile[rank]++;
    if (rank > 0) ++in_spectrum;
  }
  rep.spectrum_measure = double(in_spectrum) / double(fibers.size());
  if (in_spectrum == 0) {
    rep.lower_A = 0.0;
    rep.upper_B = 0.0;
    rep.verdict = Verdict::Violated;
    warn(warnings, "frame check: empty spectrum (all Gramian fibers vanish)");
    return rep;
  }
  rep.lower_A = A;
  rep.upper_B = B;
  double tol = tolerances().abs;
  if (A < tol)
    rep.verdict = Verdict::Violated;
  else if (A < 10.0 * tol)
    rep.verdict = Verdict::Inconclusive;
  else
    rep.verdict = Verdict::Consistent;
  return rep;
}

ConditionAReport check_condition_A(const std::vector<Generator>& bank, double s,
                                   const GridSpec& grid, WarningSink* warnings) {
  if (s < 0.0) throw PreconditionError("condition (A) check requires s >= 0");
  ConditionAReport rep;
  rep.closedness = frame_bounds(bank, 0.0, grid, warnings);
  rep.frame = frame_bounds(bank, s, grid, warnings);
  bool linf_ok = true;
  for (const auto& g : bank) {
    double v = g.linf_periodization(grid.K);
    rep.linf_diagnostic.push_back(v);
    if (!std::isfinite(v) || v > 1e6) linf_ok = false;
  }
  if (rep.closedness.verdict == Verdict::Violated ||
      rep.frame.verdict == Verdict::Violated || !linf_ok)
    rep.verdict = Verdict::Violated;
  else if (rep.closedness.verdict == Verdict::Inconclusive ||
           rep.frame.verdict == Verdict::Inconclusive)
    rep.verdict = Verdict::Inconclusive;
  else
    rep.verdict = Verdict::Consistent;
  return rep;
}

ProjectionResult project(const FreqFn& target_hat, int dim,
                         const std::vector<Generator>& bank, double s,
                         const GridSpec& grid, WarningSink* warnings) {
  grid.validate();
  if (bank.empty()) throw PreconditionError("projection requires a nonempty bank");
  FrameReport fr = frame_bounds(bank, s, grid, nullptr);
  if (fr.verdict == Verdict::Violated)
    throw PreconditionError(
        "projection requires a frame: the generator bank fails the frame condition");

  auto fibers = fiber_grid(grid, dim);
  int m = int(bank.size());
  double cutoff = tolerances().abs;

  std::vector<Vector> tau(fibers.size());
  std::vector<double> cond(fibers.size(), 0.0);
  parallel_for(fibers.size(), [&](std::size_t q) {
    Matrix G = gramian_matrix(bank, s, fibers[q], grid.K, nullptr);
    Vector b(m);
    for (int i = 0; i < m; ++i)
      b(i) = bracket(target_hat, bank[std::size_t(i)].fourier_fn(), s, fibers[q],
                     grid.K, dim, nullptr);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(G);
    const auto& lam = solver.eigenvalues();
    Vector proj = solver.eigenvectors().adjoint() * b;
    double lmax = lam(m - 1), lmin_pos = 0.0;
    for (int i = 0; i < m; ++i) {
      if (lam(i) > cutoff) {
        if (lmin_pos == 0.0) lmin_pos = lam(i);
        proj(i) /= lam(i);
      } else {
        proj(i) = 0.0;  // pseudoinverse on the rank-deficient part
      }
    }
    tau[q] = solver.eigenvectors() * proj;
    cond[q] = lmin_pos > 0.0 ? lmax / lmin_pos : 0.0;
  });

  // inverse DFT of the fiber symbols: c_k = (1/M^d) sum_q tau(omega_q) e^{2 pi i <k, omega_q>}
  int M = grid.fibers_per_axis();
  ProjectionResult out;
  out.projection.generators = bank;
  out.projection.order_s = s;
  out.projection.coeffs.assign(std::size_t(m), CoeffSeq(dim));
  double norm = 1.0 / double(fibers.size());
  for (int gi = 0; gi < m; ++gi) {
    CoeffSeq c(dim);
    int k1lo = dim == 2 ? -M / 2 : 0, k1hi = dim == 2 ? M / 2 - 1 : 0;
    for (int k0 = -M / 2; k0 < M / 2; ++k0) {
      for (int k1 = k1lo; k1 <= k1hi; ++k1) {
        cplx acc = 0.0;
        for (std::size_t q = 0; q < fibers.size(); ++q) {
          double phase = 2.0 * kPi * (k0 * fibers[q][0] + k1 * fibers[q][1]);
          acc += tau[q](gi) * cplx{std::cos(phase), std::sin(phase)};
        }
        acc *= norm;
        if (std::abs(acc) > 1e-13) c.set({k0, k1}, acc);
      }
    }
    out.projection.coeffs[std::size_t(gi)] = std::move(c);
  }

  for (double cnd : cond) {
    out.max_fiber_condition = std::max(out.max_fiber_condition, cnd);
    if (cnd > 1e8) ++out.ill_conditioned_fibers;
  }
  if (out.ill_conditioned_fibers > 0)
    warn(warnings, "projection: ill-conditioned fibers (condition number > 1e8)");

  auto proj_hat = out.projection.fourier_fn();
  FreqFn diff = [target_hat, proj_hat](const Point& t) {
    return target_hat(t) - proj_hat(t);
  };
  out.residual_norm = sobolev_norm(diff, s, grid, dim, warnings);
  return out;
}

ProjectionResult project(const Generator& target, const std::vector<Generator>& bank,
                         double s, const GridSpec& grid, WarningSink* warnings) {
  return project(target.fourier_fn(), target.dim(), bank, s, grid, warnings);
}

ProjectionResult project(const SIFunction& target, const std::vector<Generator>& bank,
                         double s, const GridSpec& grid, WarningSink* warnings) {
  target.validate();
  return project(target.fourier_fn(), target.dim(), bank, s, grid, warnings);
}

TransitionMatrix TransitionMatrix::identity(int m, int dim) {
  TransitionMatrix A;
  A.m = m;
  A.dim = dim;
  A.entries.assign(std::size_t(m) * m, PeriodicSymbol{CoeffSeq(dim)});
  for (int i = 0; i < m; ++i)
    A.entries[std::size_t(i) * m + i] = PeriodicSymbol{CoeffSeq::delta(dim)};
  return A;
}

RegularityReport transition_regularity(const TransitionMatrix& A, const GridSpec& grid) {
  if (int(A.entries.size()) != A.m * A.m)
    throw PreconditionError("transition matrix must be square");
  auto fibers = fiber_grid(grid, A.dim);
  RegularityReport rep;
  rep.min_abs_det = std::numeric_limits<double>::infinity();
  double tol = tolerances().abs;
  for (const auto& omega : fibers) {
    Matrix M(A.m, A.m);
    for (int i = 0; i < A.m; ++i)
      for (int j = 0; j < A.m; ++j) M(i, j) = A.at(i, j).eval(omega);
    double ad = std::abs(M.determinant());
    rep.min_abs_det = std::min(rep.min_abs_det, ad);
    if (ad < tol) rep.singular_points.emplace_back(omega, ad);
  }
  rep.regular = rep.singular_points.empty();
  return rep;
}

SameSpaceReport same_space_check(const std::vector<Generator>& phi,
                                 const std::vector<Generator>& psi, double s,
                                 const GridSpec& grid, WarningSink* warnings) {
  SameSpaceReport rep;
  for (const auto& p : psi)
    rep.residuals_psi_onto_phi.push_back(project(p, phi, s, grid, warnings).residual_norm);
  for (const auto& p : phi)
    rep.residuals_phi_onto_psi.push_back(project(p, psi, s, grid, warnings).residual_norm);

  // residual threshold relative to the generator norms
  double scale = 0.0;
  for (const auto& p : phi) scale = std::max(scale, sobolev_norm(p, s, grid));
  for (const auto& p : psi) scale = std::max(scale, sobolev_norm(p, s, grid));
  double tol_eq = std::max(tolerances().abs, tolerances().rel * scale);
  double worst = 0.0;
  for (double r : rep.residuals_psi_onto_phi) worst = std::max(worst, r);
  for (double r : rep.residuals_phi_onto_psi) worst = std::max(worst, r);
  if (worst <= tol_eq)
    rep.verdict = Verdict::Consistent;  // spaces agree
  else if (worst <= 10.0 * tol_eq)
    rep.verdict = Verdict::Inconclusive;
  else
    rep.verdict = Verdict::Violated;  // spaces differ

  // symmetric difference of Fourier-support indicators on the frequency grid
  int dim = phi.front().dim();
  int Nf = grid.freq_points();
  std::size_t nodes = dim == 1 ? std::size_t(Nf) : std::size_t(Nf) * Nf;
  std::size_t sym_diff = 0;
  double tol = tolerances().abs;
  auto covered = [&](const std::vector<Generator>& bank, const Point& t) {
    for (const auto& g : bank)
      if (std::abs(g.fourier(t)) > tol) return true;
    return false;
  };
  for (std::size_t idx = 0; idx < nodes; ++idx) {
    Point t;
    if (dim == 1) {
      t = {grid.freq_node(int(idx)), 0.0};
    } else {
      t = {grid.freq_node(int(idx) / Nf), grid.freq_node(int(idx) % Nf)};
    }
    if (covered(phi, t) != covered(psi, t)) ++sym_diff;
  }
  rep.support_symmetric_difference = double(sym_diff) / double(nodes);
  return rep;
}

}  // namespace sispace
