#pragma once
// Weighted sequence algebra: polynomial weights mu_s, finitely supported
// coefficient sequences on Z^d (d in {1,2}) with weighted l^p_s norms and
// discrete convolution, and grid descriptors shared by the spectral code.

#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "sispace/common.hpp"

namespace sispace {

// mu_s(x) = (1+|x|^2)^(s/2)
inline double weight_eval(double s, const Point& x) {
  return std::pow(1.0 + norm_sq(x), s / 2.0);
}
inline double weight_eval(double s, double x) { return weight_eval(s, Point{x, 0.0}); }

struct Weight {
  double s = 0.0;
  double operator()(const Point& x) const { return weight_eval(s, x); }
  double operator()(double x) const { return weight_eval(s, x); }
};

// Finitely supported map Z^d -> C. Entries with zero amplitude are dropped so
// support comparisons are exact.
class CoeffSeq {
 public:
  explicit CoeffSeq(int dim = 1) : dim_(dim) {
    if (dim != 1 && dim != 2) throw DimensionMismatch("CoeffSeq dimension must be 1 or 2");
  }

  int dim() const { return dim_; }
  const std::map<LatticePoint, cplx>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  cplx at(const LatticePoint& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? cplx{0.0, 0.0} : it->second;
  }
  cplx at(int k) const { return at(LatticePoint{k, 0}); }

  void set(const LatticePoint& k, cplx v) {
    if (v == cplx{0.0, 0.0})
      entries_.erase(k);
    else
      entries_[k] = v;
  }
  void set(int k, cplx v) { set(LatticePoint{k, 0}, v); }

  void add(const LatticePoint& k, cplx v) { set(k, at(k) + v); }

  static CoeffSeq delta(int dim, const LatticePoint& k = {0, 0}, cplx amp = {1.0, 0.0}) {
    CoeffSeq c(dim);
    c.set(k, amp);
    return c;
  }

  CoeffSeq scaled(cplx factor) const {
    CoeffSeq out(dim_);
    for (const auto& [k, v] : entries_) out.set(k, v * factor);
    return out;
  }

  CoeffSeq shifted(const LatticePoint& j) const {
    CoeffSeq out(dim_);
    for (const auto& [k, v] : entries_) out.set({k[0] + j[0], k[1] + j[1]}, v);
    return out;
  }

  CoeffSeq operator+(const CoeffSeq& other) const {
    if (other.dim_ != dim_) throw DimensionMismatch("sequence dimensions differ");
    CoeffSeq out = *this;
    for (const auto& [k, v] : other.entries_) out.add(k, v);
    return out;
  }

  CoeffSeq operator-(const CoeffSeq& other) const {
    return *this + other.scaled({-1.0, 0.0});
  }

  bool operator==(const CoeffSeq& other) const {
    return dim_ == other.dim_ && entries_ == other.entries_;
  }

 private:
  int dim_;
  std::map<LatticePoint, cplx> entries_;
};

// (sum_k |c_k|^p mu_{ps}(k))^{1/p}, or sup_k |c_k| mu_s(k) for p = infinity.
inline double seq_norm(const CoeffSeq& c, double p, double s) {
  if (std::isinf(p)) {
    double sup = 0.0;
    for (const auto& [k, v] : c.entries())
      sup = std::max(sup, std::abs(v) * weight_eval(s, to_point(k)));
    return sup;
  }
  if (p != 1.0 && p != 2.0)
    throw PreconditionError("seq_norm supports p in {1, 2, inf}");
  double acc = 0.0;
  for (const auto& [k, v] : c.entries())
    acc += std::pow(std::abs(v), p) * weight_eval(p * s, to_point(k));
  return std::pow(acc, 1.0 / p);
}

// (a*b)_n = sum_{k+j=n} a_k b_j; support is the Minkowski sum of supports.
inline CoeffSeq seq_convolve(const CoeffSeq& a, const CoeffSeq& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("convolution requires equal dimensions");
  CoeffSeq out(a.dim());
  for (const auto& [k, av] : a.entries())
    for (const auto& [j, bv] : b.entries())
      out.add({k[0] + j[0], k[1] + j[1]}, av * bv);
  return out;
}

// Space/frequency truncation parameters. The frequency grid has spacing
// 1/(2R); R/h must be integral so the space grid contains the origin.
struct GridSpec {
  double R = 32.0;
  double h = 1.0 / 16.0;
  double freq_radius = 8.0;
  int K = 32;

  void validate() const {
    if (R <= 0 || h <= 0 || K < 1 || freq_radius <= 0)
      throw PreconditionError("grid parameters must be positive with K >= 1");
    double q = R / h;
    if (std::abs(q - std::round(q)) > 1e-9)
      throw PreconditionError("grid requires R/h integral");
  }

  // Space nodes per axis: x_i = i*h, i = -R/h .. R/h.
  int space_points() const { return 2 * int(std::lround(R / h)) + 1; }
  double space_node(int i) const { return (i - int(std::lround(R / h))) * h; }

  // Frequency nodes per axis: t_j = j/(2R), |t_j| <= freq_radius.
  double freq_step() const { return 1.0 / (2.0 * R); }
  int freq_points() const { return 2 * int(std::lround(freq_radius * 2.0 * R)) + 1; }
  double freq_node(int j) const {
    return (j - int(std::lround(freq_radius * 2.0 * R))) * freq_step();
  }

  // Fibers per axis on the torus: omega_q = q/M with M = 2R, so every
  // unfolded frequency omega + k lands exactly on the frequency grid.
  int fibers_per_axis() const { return int(std::lround(2.0 * R)); }

  static GridSpec default_for_dim(int dim) {
    if (dim == 2) return GridSpec{16.0, 1.0 / 8.0, 4.0, 16};
    return GridSpec{};
  }
};

}  // namespace sispace
