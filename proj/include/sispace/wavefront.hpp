#pragma once
// Symbolic wave-front bounds: finite cone algebra over (base point, direction
// cone) items with lattice periodization flags, realizing the convolution,
// product and shift containments as set arithmetic. Cones never contain the
// zero direction; all rounding is outward so bounds stay conservative.

#include <vector>

#include "sispace/core.hpp"

namespace sispace {

class Cone {
 public:
  // d = 1: subset of {+, -}
  static Cone plus();
  static Cone minus();
  static Cone line_both();
  static Cone empty_cone(int dim);
  static Cone full(int dim);
  // d = 2: finite union of closed angular intervals in degrees; intervals may
  // wrap (lo > hi means crossing 0)
  static Cone arcs(const std::vector<std::array<double, 2>>& intervals);

  int dim() const { return dim_; }
  bool empty() const;
  bool is_full() const;
  bool contains_sign(int sign) const;       // d = 1
  bool contains_angle(double deg) const;    // d = 2
  bool contains_dir(const Point& xi) const; // either
  // canonical arc list (non-wrapping, sorted, merged); d = 2 only
  const std::vector<std::array<double, 2>>& segments() const { return segs_; }
  unsigned mask() const { return mask_; }

  friend Cone cone_intersect(const Cone& a, const Cone& b);
  friend Cone cone_union(const Cone& a, const Cone& b);
  friend Cone cone_antipode(const Cone& a);
  // conservative direction set of xi + eta over xi in a (or 0), eta in b
  // (or 0), excluding the zero direction; callers must rule out antipodal
  // pairs first (the hull is undefined across 180 degrees of separation)
  friend Cone cone_sum(const Cone& a, const Cone& b);
  // largest angular distance (<= 180) between a direction of a and one of b
  friend double cone_max_separation(const Cone& a, const Cone& b);

  bool operator==(const Cone& o) const {
    return dim_ == o.dim_ && mask_ == o.mask_ && segs_ == o.segs_;
  }

 private:
  int dim_ = 1;
  unsigned mask_ = 0;  // d = 1: bit 0 = plus, bit 1 = minus
  std::vector<std::array<double, 2>> segs_;  // d = 2
  void normalize();
};

struct WFItem {
  Point base{0.0, 0.0};
  Cone cone = Cone::empty_cone(1);
  bool lattice_periodic = false;
};

struct WFSet {
  int dim = 1;
  std::vector<WFItem> items;

  // sort bases, reduce periodic bases to [0,1)^d, merge cones at equal
  // (base, flag), drop empty cones
  void canonicalize();
};

// WF(f * g) bound: bases add, cones intersect, flags OR
WFSet wf_conv_bound(const WFSet& A, const WFSet& B);

// WF(f g) bound: at shared bases the direction sums, lone bases pass through.
// Throws ProductUndefined when some shared base carries antipodal directions.
WFSet wf_prod_bound(const WFSet& A, const WFSet& B);

// lattice periodization: every item gains the periodic flag
WFSet wf_shift_bound(const WFSet& A);

// union over generator pairs of wf_shift_bound(wf_conv_bound(., .))
WFSet wf_fgsi_conv_bound(const std::vector<WFSet>& WFphi,
                         const std::vector<WFSet>& WFpsi);

// membership with lattice unfolding |k|_inf <= lattice_radius on periodic items
bool wf_member(const WFSet& W, const Point& x, const Point& xi, int lattice_radius);

}  // namespace sispace
