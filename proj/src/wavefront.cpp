#include "sispace/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sispace {

namespace {

constexpr double kAngTol = 1e-9;
constexpr unsigned kPlus = 1u, kMinus = 2u;

double wrap360(double a) {
  a = std::fmod(a, 360.0);
  if (a < 0.0) a += 360.0;
  return a;
}

// angular distance in [0, 180]
double ang_dist(double delta) { return 180.0 - std::abs(180.0 - wrap360(delta)); }

}  // namespace

void Cone::normalize() {
  if (dim_ == 1) {
    segs_.clear();
    return;
  }
  mask_ = 0;
  // split wrapped intervals, clamp, sort, merge
  std::vector<std::array<double, 2>> flat;
  for (auto seg : segs_) {
    double lo = seg[0], hi = seg[1];
    if (hi - lo >= 360.0 - kAngTol) {
      segs_ = {{0.0, 360.0}};
      return;
    }
    lo = wrap360(lo);
    hi = wrap360(hi);
    if (hi == 0.0 && seg[1] != seg[0]) hi = 360.0;
    if (lo <= hi + kAngTol) {
      flat.push_back({lo, std::max(hi, lo)});
    } else {  // wraps through 0
      flat.push_back({lo, 360.0});
      flat.push_back({0.0, hi});
    }
  }
  std::sort(flat.begin(), flat.end());
  segs_.clear();
  for (const auto& seg : flat) {
    if (!segs_.empty() && seg[0] <= segs_.back()[1] + kAngTol)
      segs_.back()[1] = std::max(segs_.back()[1], seg[1]);
    else
      segs_.push_back(seg);
  }
  double covered = 0.0;
  for (const auto& seg : segs_) covered += seg[1] - seg[0];
  if (covered >= 360.0 - kAngTol) segs_ = {{0.0, 360.0}};
}

Cone Cone::plus() {
  Cone c;
  c.dim_ = 1;
  c.mask_ = kPlus;
  return c;
}

Cone Cone::minus() {
  Cone c;
  c.dim_ = 1;
  c.mask_ = kMinus;
  return c;
}

Cone Cone::line_both() {
  Cone c;
  c.dim_ = 1;
  c.mask_ = kPlus | kMinus;
  return c;
}

Cone Cone::empty_cone(int dim) {
  Cone c;
  c.dim_ = dim;
  return c;
}

Cone Cone::full(int dim) {
  if (dim == 1) return line_both();
  Cone c;
  c.dim_ = 2;
  c.segs_ = {{0.0, 360.0}};
  return c;
}

Cone Cone::arcs(const std::vector<std::array<double, 2>>& intervals) {
  Cone c;
  c.dim_ = 2;
  c.segs_ = intervals;
  c.normalize();
  return c;
}

bool Cone::empty() const { return dim_ == 1 ? mask_ == 0 : segs_.empty(); }

bool Cone::is_full() const {
  if (dim_ == 1) return mask_ == (kPlus | kMinus);
  return segs_.size() == 1 && segs_[0][0] <= kAngTol && segs_[0][1] >= 360.0 - kAngTol;
}

bool Cone::contains_sign(int sign) const {
  return (mask_ & (sign > 0 ? kPlus : kMinus)) != 0;
}

bool Cone::contains_angle(double deg) const {
  double a = wrap360(deg);
  for (const auto& seg : segs_) {
    if (a >= seg[0] - kAngTol && a <= seg[1] + kAngTol) return true;
    if (a + 360.0 >= seg[0] - kAngTol && a + 360.0 <= seg[1] + kAngTol) return true;
  }
  return false;
}

bool Cone::contains_dir(const Point& xi) const {
  if (dim_ == 1) {
    if (xi[0] == 0.0) return false;
    return contains_sign(xi[0] > 0.0 ? 1 : -1);
  }
  if (xi[0] == 0.0 && xi[1] == 0.0) return false;
  return contains_angle(std::atan2(xi[1], xi[0]) * 180.0 / std::numbers::pi);
}

Cone cone_intersect(const Cone& a, const Cone& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("cone dimensions differ");
  Cone out;
  out.dim_ = a.dim_;
  if (a.dim_ == 1) {
    out.mask_ = a.mask_ & b.mask_;
    return out;
  }
  // segments are stored in [0, 360]; shift one side by +-360 so overlaps
  // across the 0/360 seam are kept
  for (const auto& sa : a.segs_)
    for (const auto& sb : b.segs_)
      for (double off : {-360.0, 0.0, 360.0}) {
        double lo = std::max(sa[0], sb[0] + off), hi = std::min(sa[1], sb[1] + off);
        if (lo <= hi + kAngTol) out.segs_.push_back({lo, std::max(lo, hi)});
      }
  out.normalize();
  return out;
}

Cone cone_union(const Cone& a, const Cone& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("cone dimensions differ");
  Cone out = a;
  if (a.dim_ == 1) {
    out.mask_ |= b.mask_;
    return out;
  }
  out.segs_.insert(out.segs_.end(), b.segs_.begin(), b.segs_.end());
  out.normalize();
  return out;
}

Cone cone_antipode(const Cone& a) {
  Cone out;
  out.dim_ = a.dim_;
  if (a.dim_ == 1) {
    if (a.mask_ & kPlus) out.mask_ |= kMinus;
    if (a.mask_ & kMinus) out.mask_ |= kPlus;
    return out;
  }
  for (const auto& seg : a.segs_) out.segs_.push_back({seg[0] + 180.0, seg[1] + 180.0});
  out.normalize();
  return out;
}

double cone_max_separation(const Cone& a, const Cone& b) {
  if (a.empty() || b.empty()) return 0.0;
  if (a.dim_ == 1) {
    double worst = 0.0;
    for (int sa : {1, -1})
      for (int sb : {1, -1})
        if (a.contains_sign(sa) && b.contains_sign(sb))
          worst = std::max(worst, sa == sb ? 0.0 : 180.0);
    return worst;
  }
  double worst = 0.0;
  for (const auto& sa : a.segs_)
    for (const auto& sb : b.segs_) {
      double lo = sa[0] - sb[1], hi = sa[1] - sb[0];
      if (hi - lo >= 360.0) return 180.0;
      // a delta congruent to 180 inside [lo, hi] realizes the max
      double first = 180.0 + 360.0 * std::ceil((lo - 180.0) / 360.0);
      if (first <= hi)
        worst = 180.0;
      else
        worst = std::max({worst, ang_dist(lo), ang_dist(hi)});
      if (worst >= 180.0) return 180.0;
    }
  return worst;
}

Cone cone_sum(const Cone& a, const Cone& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("cone dimensions differ");
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.dim_ == 1) {
    Cone out;
    out.dim_ = 1;
    out.mask_ = a.mask_ | b.mask_;
    return out;
  }
  if (a.is_full() || b.is_full()) return Cone::full(2);
  // minimal covering arc: merge all segments, take the complement of the
  // largest circular gap
  Cone merged = cone_union(a, b);
  const auto& segs = merged.segments();
  if (merged.is_full() || segs.empty()) return merged;
  double best_gap = (segs.front()[0] + 360.0) - segs.back()[1];
  double hull_start = segs.front()[0];
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    double gap = segs[i + 1][0] - segs[i][1];
    if (gap > best_gap) {
      best_gap = gap;
      hull_start = segs[i + 1][0];
    }
  }
  return Cone::arcs({{hull_start, hull_start + (360.0 - best_gap)}});
}

namespace {

bool points_close(const Point& a, const Point& b, int dim) {
  double d0 = std::abs(a[0] - b[0]);
  double d1 = dim == 2 ? std::abs(a[1] - b[1]) : 0.0;
  return std::max(d0, d1) <= 1e-9;
}

bool integer_offset(const Point& a, const Point& b, int dim) {
  for (int ax = 0; ax < dim; ++ax) {
    double diff = a[std::size_t(ax)] - b[std::size_t(ax)];
    if (std::abs(diff - std::round(diff)) > 1e-9) return false;
  }
  return true;
}

}  // namespace

void WFSet::canonicalize() {
  for (auto& item : items) {
    if (!item.lattice_periodic) continue;
    for (int ax = 0; ax < dim; ++ax) {
      double& v = item.base[std::size_t(ax)];
      v -= std::floor(v);
      if (v >= 1.0 - 1e-12) v = 0.0;  // guard against floor rounding
    }
  }
  std::erase_if(items, [](const WFItem& it) { return it.cone.empty(); });
  std::sort(items.begin(), items.end(), [](const WFItem& a, const WFItem& b) {
    if (a.base[0] != b.base[0]) return a.base[0] < b.base[0];
    if (a.base[1] != b.base[1]) return a.base[1] < b.base[1];
    return a.lattice_periodic < b.lattice_periodic;
  });
  std::vector<WFItem> merged;
  for (auto& item : items) {
    if (!merged.empty() && merged.back().lattice_periodic == item.lattice_periodic &&
        points_close(merged.back().base, item.base, dim)) {
      merged.back().cone = cone_union(merged.back().cone, item.cone);
    } else {
      merged.push_back(std::move(item));
    }
  }
  items = std::move(merged);
}

WFSet wf_conv_bound(const WFSet& A, const WFSet& B) {
  if (A.dim != B.dim) throw DimensionMismatch("wave-front sets differ in dimension");
  WFSet out;
  out.dim = A.dim;
  for (const auto& ia : A.items) {
    for (const auto& ib : B.items) {
      Cone c = cone_intersect(ia.cone, ib.cone);
      if (c.empty()) continue;
      WFItem item;
      item.base = {ia.base[0] + ib.base[0], ia.base[1] + ib.base[1]};
      item.cone = c;
      item.lattice_periodic = ia.lattice_periodic || ib.lattice_periodic;
      out.items.push_back(std::move(item));
    }
  }
  out.canonicalize();
  return out;
}

WFSet wf_prod_bound(const WFSet& A, const WFSet& B) {
  if (A.dim != B.dim) throw DimensionMismatch("wave-front sets differ in dimension");
  WFSet out;
  out.dim = A.dim;
  // lone bases pass through: the other factor contributes the zero frequency
  out.items = A.items;
  out.items.insert(out.items.end(), B.items.begin(), B.items.end());
  for (const auto& ia : A.items) {
    for (const auto& ib : B.items) {
      bool share;
      if (ia.lattice_periodic || ib.lattice_periodic)
        share = integer_offset(ia.base, ib.base, A.dim);
      else
        share = points_close(ia.base, ib.base, A.dim);
      if (!share) continue;
      if (!cone_intersect(ia.cone, cone_antipode(ib.cone)).empty())
        throw ProductUndefined(
            "the factors carry opposite directions over a common point; the "
            "product's wave front is not bounded by this calculus");
      WFItem item;
      item.base = ia.lattice_periodic ? ib.base : ia.base;
      item.cone = cone_sum(ia.cone, ib.cone);
      item.lattice_periodic = ia.lattice_periodic && ib.lattice_periodic;
      out.items.push_back(std::move(item));
    }
  }
  out.canonicalize();
  return out;
}

WFSet wf_shift_bound(const WFSet& A) {
  WFSet out = A;
  for (auto& item : out.items) item.lattice_periodic = true;
  out.canonicalize();
  return out;
}

WFSet wf_fgsi_conv_bound(const std::vector<WFSet>& WFphi,
                         const std::vector<WFSet>& WFpsi) {
  WFSet out;
  out.dim = WFphi.empty() ? 1 : WFphi.front().dim;
  for (const auto& wa : WFphi) {
    for (const auto& wb : WFpsi) {
      WFSet part = wf_shift_bound(wf_conv_bound(wa, wb));
      out.dim = part.dim;
      out.items.insert(out.items.end(), part.items.begin(), part.items.end());
    }
  }
  out.canonicalize();
  return out;
}

bool wf_member(const WFSet& W, const Point& x, const Point& xi, int lattice_radius) {
  for (const auto& item : W.items) {
    if (!item.cone.contains_dir(xi)) continue;
    if (!item.lattice_periodic) {
      if (points_close(item.base, x, W.dim)) return true;
      continue;
    }
    int k1lo = W.dim == 2 ? -lattice_radius : 0;
    int k1hi = W.dim == 2 ? lattice_radius : 0;
    for (int k0 = -lattice_radius; k0 <= lattice_radius; ++k0)
      for (int k1 = k1lo; k1 <= k1hi; ++k1)
        if (points_close({item.base[0] + k0, item.base[1] + k1}, x, W.dim)) return true;
  }
  return false;
}

}  // namespace sispace
