#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "gcnn/errors.hpp"
#include "gcnn/groups.hpp"

namespace gcnn {

// Multi-channel feature map on Z^2, stored dense as K x H x W.
// The plane coordinate of array index (i, j) is
//   (u, v) = (j - origin_col, i - origin_row),
// so row index i increases downward and v = i - origin_row. Together
// with the quarter-turn matrices this fixes the on-screen rotation
// direction; it is documented, not configurable.
template <typename T>
struct PlanarStack {
  int channels = 0;
  int height = 0;
  int width = 0;
  int origin_row = 0;
  int origin_col = 0;
  std::vector<T> data;

  PlanarStack() = default;
  PlanarStack(int k, int h, int w)
      : channels(k),
        height(h),
        width(w),
        origin_row((h - 1) / 2),
        origin_col((w - 1) / 2),
        data(static_cast<std::size_t>(k) * h * w, T(0)) {
    if (k < 1 || h < 1 || w < 1)
      throw ShapeMismatch("PlanarStack dimensions must be >= 1");
  }

  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * height + i) * width + j;
  }
  T at(int k, int i, int j) const { return data[index(k, i, j)]; }
  T& at(int k, int i, int j) { return data[index(k, i, j)]; }
  bool in_bounds(int i, int j) const {
    return i >= 0 && i < height && j >= 0 && j < width;
  }
  Point coord(int i, int j) const {
    return Point{j - origin_col, i - origin_row};
  }
  bool all_finite() const {
    for (const T& x : data)
      if (!std::isfinite(static_cast<double>(x))) return false;
    return true;
  }
};

// Feature map on a group G, stored dense as K x S x H x W with S the
// stabilizer size. Index (k, s, i, j) holds the value at the group
// element translation(u, v) * stabilizer[s] with (u, v) from the planar
// convention above.
template <typename T>
struct GStack {
  GroupId group = GroupId::Z2;
  int channels = 0;
  int stabilizers = 1;
  int height = 0;
  int width = 0;
  int origin_row = 0;
  int origin_col = 0;
  std::vector<T> data;

  GStack() = default;
  GStack(GroupId g, int k, int h, int w)
      : group(g),
        channels(k),
        stabilizers(stabilizer_size(g)),
        height(h),
        width(w),
        origin_row((h - 1) / 2),
        origin_col((w - 1) / 2),
        data(static_cast<std::size_t>(k) * stabilizers * h * w, T(0)) {
    if (k < 1 || h < 1 || w < 1)
      throw ShapeMismatch("GStack dimensions must be >= 1");
  }

  std::size_t index(int k, int s, int i, int j) const {
    return ((static_cast<std::size_t>(k) * stabilizers + s) * height + i) * width +
           j;
  }
  T at(int k, int s, int i, int j) const { return data[index(k, s, i, j)]; }
  T& at(int k, int s, int i, int j) { return data[index(k, s, i, j)]; }
  bool in_bounds(int i, int j) const {
    return i >= 0 && i < height && j >= 0 && j < width;
  }
  Point coord(int i, int j) const {
    return Point{j - origin_col, i - origin_row};
  }
  bool all_finite() const {
    for (const T& x : data)
      if (!std::isfinite(static_cast<double>(x))) return false;
    return true;
  }
};

struct GIndex {
  int s = 0;
  int i = 0;
  int j = 0;
  friend bool operator==(const GIndex&, const GIndex&) = default;
};

// Group element represented by index (s, i, j) of a GStack.
template <typename T>
GroupElement index_to_group(const GStack<T>& stack, int s, int i, int j) {
  if (s < 0 || s >= stack.stabilizers || !stack.in_bounds(i, j))
    throw IndexOutOfRange("index_to_group: index outside stack");
  const GroupElement& stab = stabilizer_elements(stack.group)[s];
  const Point c = stack.coord(i, j);
  return make_element(stack.group, stab.m, stab.r, c.u, c.v);
}

// Inverse of index_to_group over the represented support.
template <typename T>
std::optional<GIndex> group_to_index(const GStack<T>& stack,
                                     const GroupElement& g) {
  if (g.group != stack.group)
    throw GroupMismatch("group_to_index: element of a different group");
  const GIndex idx{stabilizer_index(stack.group, g.m, g.r),
                   g.v + stack.origin_row, g.u + stack.origin_col};
  if (!stack.in_bounds(idx.i, idx.j)) return std::nullopt;
  return idx;
}

namespace detail {

// Spatial transforms run on the doubled lattice so that the pivot is the
// grid center for every array size: doubled coordinate of cell (i, j) is
// (U, V) = (2j - (W-1), 2i - (H-1)). For odd H, W with the default
// centered origin this coincides with the origin-based coordinates; for
// even sizes it realizes rotation about the (half-integer) grid center.
inline bool doubled_to_cell(int su, int sv, int h, int w, int& i, int& j) {
  const int jj = su + (w - 1);
  const int ii = sv + (h - 1);
  if (jj < 0 || ii < 0 || jj > 2 * (w - 1) || ii > 2 * (h - 1)) return false;
  if ((jj & 1) || (ii & 1)) return false;  // off-lattice (mixed parity)
  i = ii / 2;
  j = jj / 2;
  return true;
}

inline void require_rotation_parity(const GroupElement& g, int h, int w) {
  if ((g.r % 2) == 1 && (h % 2) != (w % 2))
    throw ShapeMismatch(
        "quarter-turn transform needs H and W of equal parity");
}

}  // namespace detail

// [L_g f](x) = f(g^{-1} x) with zero fill for preimages outside the
// stored support.
template <typename T>
PlanarStack<T> left_transform_planar(const GroupElement& g,
                                     const PlanarStack<T>& f) {
  detail::require_rotation_parity(g, f.height, f.width);
  PlanarStack<T> out(f.channels, f.height, f.width);
  out.origin_row = f.origin_row;
  out.origin_col = f.origin_col;
  const GroupElement ginv = inverse(g);
  for (int i = 0; i < f.height; ++i)
    for (int j = 0; j < f.width; ++j) {
      const Point src = act_on_doubled(
          ginv, Point{2 * j - (f.width - 1), 2 * i - (f.height - 1)});
      int si = 0, sj = 0;
      if (!detail::doubled_to_cell(src.u, src.v, f.height, f.width, si, sj))
        continue;
      for (int k = 0; k < f.channels; ++k) out.at(k, i, j) = f.at(k, si, sj);
    }
  return out;
}

// [L_g f](h) = f(g^{-1} h) for f a function on G. The stabilizer axis is
// permuted by s -> index(stab(g)^{-1} * stab[s]) while the spatial axes
// move exactly as in the planar case.
template <typename T>
GStack<T> left_transform_g(const GroupElement& g, const GStack<T>& f) {
  if (g.group != f.group)
    throw GroupMismatch("left_transform_g: element of a different group");
  detail::require_rotation_parity(g, f.height, f.width);
  GStack<T> out(f.group, f.channels, f.height, f.width);
  out.origin_row = f.origin_row;
  out.origin_col = f.origin_col;
  const GroupElement ginv = inverse(g);
  const GroupElement gstab_inv =
      make_element(f.group, ginv.m, ginv.r, 0, 0);
  const auto& stab = stabilizer_elements(f.group);
  std::vector<int> src_s(stab.size());
  for (std::size_t s = 0; s < stab.size(); ++s) {
    const GroupElement c = compose(gstab_inv, stab[s]);
    src_s[s] = stabilizer_index(f.group, c.m, c.r);
  }
  for (int i = 0; i < f.height; ++i)
    for (int j = 0; j < f.width; ++j) {
      const Point src = act_on_doubled(
          ginv, Point{2 * j - (f.width - 1), 2 * i - (f.height - 1)});
      int si = 0, sj = 0;
      if (!detail::doubled_to_cell(src.u, src.v, f.height, f.width, si, sj))
        continue;
      for (int k = 0; k < f.channels; ++k)
        for (int s = 0; s < f.stabilizers; ++s)
          out.at(k, s, i, j) = f.at(k, src_s[s], si, sj);
    }
  return out;
}

// f*(g) = f(g^{-1}). For S = 1 this is a point reflection (any shape);
// for p4/p4m the quarter turns require a square spatial extent so the
// result is an exact value permutation and f** = f bit-for-bit.
template <typename T>
GStack<T> involution(const GStack<T>& f) {
  if (f.stabilizers > 1 && f.height != f.width)
    throw ShapeMismatch("involution on p4/p4m needs a square spatial extent");
  GStack<T> out(f.group, f.channels, f.height, f.width);
  out.origin_row = f.origin_row;
  out.origin_col = f.origin_col;
  const auto& stab = stabilizer_elements(f.group);
  for (int s = 0; s < f.stabilizers; ++s) {
    const GroupElement sinv = inverse(stab[s]);
    const int ssrc = stabilizer_index(f.group, sinv.m, sinv.r);
    for (int i = 0; i < f.height; ++i)
      for (int j = 0; j < f.width; ++j) {
        // g at (s, X) has inverse (inverse(stab[s]), -R_s^{-1} X).
        const Point src = act_on_doubled(
            sinv, Point{-(2 * j - (f.width - 1)), -(2 * i - (f.height - 1))});
        int si = 0, sj = 0;
        if (!detail::doubled_to_cell(src.u, src.v, f.height, f.width, si, sj))
          continue;
        for (int k = 0; k < f.channels; ++k)
          out.at(k, s, i, j) = f.at(k, ssrc, si, sj);
      }
  }
  return out;
}

// A planar stack viewed as the S = 1 stack on Z^2.
template <typename T>
GStack<T> gstack_from_planar(const PlanarStack<T>& f) {
  GStack<T> out(GroupId::Z2, f.channels, f.height, f.width);
  out.origin_row = f.origin_row;
  out.origin_col = f.origin_col;
  out.data = f.data;
  return out;
}

template <typename T>
PlanarStack<T> planar_from_gstack(const GStack<T>& f) {
  if (f.stabilizers != 1)
    throw ShapeMismatch("planar_from_gstack needs S == 1");
  PlanarStack<T> out(f.channels, f.height, f.width);
  out.origin_row = f.origin_row;
  out.origin_col = f.origin_col;
  out.data = f.data;
  return out;
}

// Folds the stabilizer axis into the channel axis: K x S x H x W viewed
// as (K*S) x H x W. The flat layouts coincide, so this is a copy.
template <typename T>
PlanarStack<T> fold_stabilizer(const GStack<T>& f) {
  PlanarStack<T> out(f.channels * f.stabilizers, f.height, f.width);
  out.origin_row = f.origin_row;
  out.origin_col = f.origin_col;
  out.data = f.data;
  return out;
}

template <typename T>
GStack<T> unfold_stabilizer(const PlanarStack<T>& f, GroupId group) {
  const int s = stabilizer_size(group);
  if (f.channels % s != 0)
    throw ShapeMismatch("unfold_stabilizer: channel count not divisible by S");
  GStack<T> out(group, f.channels / s, f.height, f.width);
  out.origin_row = f.origin_row;
  out.origin_col = f.origin_col;
  out.data = f.data;
  return out;
}

}  // namespace gcnn
