#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gcnn/errors.hpp"
#include "gcnn/groups.hpp"
#include "gcnn/parallel.hpp"
#include "gcnn/stacks.hpp"

namespace gcnn {

// Conventional planar filter bank, K_out x K_in x n x n. Any n >= 1 is
// allowed here; the odd-n restriction applies to G-filters only.
template <typename T>
struct PlanarFilterBank {
  int k_out = 0;
  int k_in = 0;
  int n = 0;
  std::vector<T> data;

  PlanarFilterBank() = default;
  PlanarFilterBank(int ko, int ki, int n_)
      : k_out(ko),
        k_in(ki),
        n(n_),
        data(static_cast<std::size_t>(ko) * ki * n_ * n_, T(0)) {
    if (ko < 1 || ki < 1 || n_ < 1)
      throw ShapeMismatch("PlanarFilterBank dimensions must be >= 1");
  }
  std::size_t index(int o, int k, int a, int b) const {
    return ((static_cast<std::size_t>(o) * k_in + k) * n + a) * n + b;
  }
  T at(int o, int k, int a, int b) const { return data[index(o, k, a, b)]; }
  T& at(int o, int k, int a, int b) { return data[index(o, k, a, b)]; }
};

// FirstLayer filters correlate a PlanarStack (S_in = 1); Full filters
// correlate a GStack (S_in = |stabilizer|).
enum class LayerKind { FirstLayer, Full };

// Layer filter array F of shape K_out x K_in x S_in x n x n. The filter
// support is centered: array cell (a, b) is the offset
// (u, v) = (b - (n-1)/2, a - (n-1)/2), which forces n odd.
template <typename T>
struct GFilterBank {
  GroupId group = GroupId::Z2;
  LayerKind kind = LayerKind::FirstLayer;
  int k_out = 0;
  int k_in = 0;
  int s_in = 1;
  int n = 0;
  std::vector<T> data;

  GFilterBank() = default;
  GFilterBank(GroupId g, LayerKind kind_, int ko, int ki, int n_)
      : group(g),
        kind(kind_),
        k_out(ko),
        k_in(ki),
        s_in(kind_ == LayerKind::FirstLayer ? 1 : stabilizer_size(g)),
        n(n_),
        data(static_cast<std::size_t>(ko) * ki * s_in * n_ * n_, T(0)) {
    if (ko < 1 || ki < 1 || n_ < 1)
      throw ShapeMismatch("GFilterBank dimensions must be >= 1");
    if (n_ % 2 == 0) throw InvalidArgument("G-filters need odd spatial extent");
  }
  std::size_t index(int o, int k, int s, int a, int b) const {
    return (((static_cast<std::size_t>(o) * k_in + k) * s_in + s) * n + a) * n +
           b;
  }
  T at(int o, int k, int s, int a, int b) const {
    return data[index(o, k, s, a, b)];
  }
  T& at(int o, int k, int s, int a, int b) { return data[index(o, k, s, a, b)]; }
};

// Precomputed permutation indices realizing the filter transformation:
// for each output cell (s_out, s_in, a, b) the source cell inside one
// K_out x K_in filter block, stored as the flat offset within the
// (S_in x n x n) block. Each fixed-s_out slice is a permutation.
struct TransformIndexTable {
  GroupId group = GroupId::Z2;
  int s_out = 1;
  int s_in = 1;
  int n = 0;
  std::vector<std::int32_t> flat;  // [s_out][s_in][a][b] -> (s*n + a)*n + b

  struct Source {
    int s = 0;
    int a = 0;
    int b = 0;
    friend bool operator==(const Source&, const Source&) = default;
  };

  std::size_t index(int so, int si, int a, int b) const {
    return ((static_cast<std::size_t>(so) * s_in + si) * n + a) * n + b;
  }
  std::int32_t source_flat(int so, int si, int a, int b) const {
    return flat[index(so, si, a, b)];
  }
  Source source(int so, int si, int a, int b) const {
    const std::int32_t f = source_flat(so, si, a, b);
    return Source{f / (n * n), (f / n) % n, f % n};
  }
};

// s_bar, u_bar, v_bar = g^-1( g(s',0,0)^-1 g(s,u,v) ) for every output
// cell. s_in must be 1 (first layer) or |stabilizer| (full layer).
TransformIndexTable build_transform_index_table(GroupId group, int s_in, int n);

// --- Planar correlation (valid mode) --------------------------------------

// out[o](x) = sum_y sum_k f[k](y) psi[o,k](y - x) over the n x n window.
// Accumulation order per output cell is fixed: channel-major, then filter
// row, then filter column.
template <typename T>
PlanarStack<T> planar_correlate(const PlanarStack<T>& f,
                                const PlanarFilterBank<T>& w, int threads = 1) {
  if (w.k_in != f.channels)
    throw ShapeMismatch("planar_correlate: channel count mismatch");
  if (w.n > f.height || w.n > f.width)
    throw ShapeMismatch("planar_correlate: filter larger than input");
  const int oh = f.height - w.n + 1;
  const int ow = f.width - w.n + 1;
  PlanarStack<T> out(w.k_out, oh, ow);
  out.origin_row = f.origin_row - (w.n - 1) / 2;
  out.origin_col = f.origin_col - (w.n - 1) / 2;
  parallel_for(w.k_out, threads, [&](int o) {
    for (int k = 0; k < f.channels; ++k)
      for (int a = 0; a < w.n; ++a)
        for (int b = 0; b < w.n; ++b) {
          const T wv = w.at(o, k, a, b);
          if (wv == T(0)) continue;
          const T* src = &f.data[f.index(k, a, b)];
          T* dst = &out.data[out.index(o, 0, 0)];
          for (int i = 0; i < oh; ++i) {
            const T* row = src + static_cast<std::size_t>(i) * f.width;
            T* orow = dst + static_cast<std::size_t>(i) * ow;
            for (int j = 0; j < ow; ++j) orow[j] += row[j] * wv;
          }
        }
  });
  return out;
}

// Adjoint of planar_correlate with respect to the input.
template <typename T>
PlanarStack<T> planar_correlate_backward_input(const PlanarStack<T>& dout,
                                               const PlanarFilterBank<T>& w,
                                               int in_h, int in_w,
                                               int threads = 1) {
  if (w.k_out != dout.channels)
    throw ShapeMismatch("backward_input: output channel mismatch");
  if (dout.height != in_h - w.n + 1 || dout.width != in_w - w.n + 1)
    throw ShapeMismatch("backward_input: spatial shape mismatch");
  PlanarStack<T> din(w.k_in, in_h, in_w);
  din.origin_row = dout.origin_row + (w.n - 1) / 2;
  din.origin_col = dout.origin_col + (w.n - 1) / 2;
  parallel_for(w.k_in, threads, [&](int k) {
    for (int o = 0; o < w.k_out; ++o)
      for (int a = 0; a < w.n; ++a)
        for (int b = 0; b < w.n; ++b) {
          const T wv = w.at(o, k, a, b);
          if (wv == T(0)) continue;
          for (int i = 0; i < dout.height; ++i) {
            const T* row = &dout.data[dout.index(o, i, 0)];
            T* drow = &din.data[din.index(k, i + a, b)];
            for (int j = 0; j < dout.width; ++j) drow[j] += row[j] * wv;
          }
        }
  });
  return din;
}

// Adjoint of planar_correlate with respect to the filter bank.
template <typename T>
PlanarFilterBank<T> planar_correlate_backward_filter(const PlanarStack<T>& dout,
                                                     const PlanarStack<T>& f,
                                                     int n, int threads = 1) {
  if (dout.height != f.height - n + 1 || dout.width != f.width - n + 1)
    throw ShapeMismatch("backward_filter: spatial shape mismatch");
  PlanarFilterBank<T> dw(dout.channels, f.channels, n);
  parallel_for(dout.channels, threads, [&](int o) {
    for (int k = 0; k < f.channels; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          T acc = T(0);
          for (int i = 0; i < dout.height; ++i) {
            const T* orow = &dout.data[dout.index(o, i, 0)];
            const T* frow = &f.data[f.index(k, i + a, b)];
            for (int j = 0; j < dout.width; ++j) acc += orow[j] * frow[j];
          }
          dw.at(o, k, a, b) = acc;
        }
  });
  return dw;
}

// --- Direct G-correlation (reference path) ---------------------------------

// [f * psi](g) = sum_{y in Z^2} sum_k f_k(y) psi_k(g^-1 y), evaluated
// literally: y runs over the whole stored support of f and psi reads as
// zero outside its centered box. Slow by design; this is the oracle the
// fast path is checked against.
template <typename T>
GStack<T> gcorr_first_layer_direct(const PlanarStack<T>& f,
                                   const GFilterBank<T>& F) {
  if (F.kind != LayerKind::FirstLayer)
    throw ShapeMismatch("gcorr_first_layer_direct needs a FirstLayer bank");
  if (F.k_in != f.channels)
    throw ShapeMismatch("gcorr_first_layer_direct: channel mismatch");
  if (F.n > f.height || F.n > f.width)
    throw ShapeMismatch("gcorr_first_layer_direct: filter larger than input");
  const int rho = (F.n - 1) / 2;
  const int oh = f.height - F.n + 1;
  const int ow = f.width - F.n + 1;
  GStack<T> out(F.group, F.k_out, oh, ow);
  out.origin_row = f.origin_row - rho;
  out.origin_col = f.origin_col - rho;
  const auto& stab = stabilizer_elements(F.group);
  for (int o = 0; o < F.k_out; ++o)
    for (int s = 0; s < out.stabilizers; ++s) {
      const GroupElement sinv = inverse(stab[s]);
      for (int i = 0; i < oh; ++i)
        for (int j = 0; j < ow; ++j) {
          const Point t = out.coord(i, j);
          T acc = T(0);
          for (int k = 0; k < f.channels; ++k)
            for (int yi = 0; yi < f.height; ++yi)
              for (int yj = 0; yj < f.width; ++yj) {
                const Point y = f.coord(yi, yj);
                const Point q = act_on_point(sinv, Point{y.u - t.u, y.v - t.v});
                if (q.u < -rho || q.u > rho || q.v < -rho || q.v > rho)
                  continue;
                acc += f.at(k, yi, yj) * F.at(o, k, 0, q.v + rho, q.u + rho);
              }
          out.at(o, s, i, j) = acc;
        }
    }
  return out;
}

// [f * psi](g) = sum_{h in G} sum_k f_k(h) psi_k(g^-1 h) with h over the
// represented support of f.
template <typename T>
GStack<T> gcorr_full_direct(const GStack<T>& f, const GFilterBank<T>& F) {
  if (F.kind != LayerKind::Full)
    throw ShapeMismatch("gcorr_full_direct needs a Full bank");
  if (F.group != f.group)
    throw GroupMismatch("gcorr_full_direct: group mismatch");
  if (F.k_in != f.channels)
    throw ShapeMismatch("gcorr_full_direct: channel mismatch");
  if (F.n > f.height || F.n > f.width)
    throw ShapeMismatch("gcorr_full_direct: filter larger than input");
  const int rho = (F.n - 1) / 2;
  const int oh = f.height - F.n + 1;
  const int ow = f.width - F.n + 1;
  GStack<T> out(F.group, F.k_out, oh, ow);
  out.origin_row = f.origin_row - rho;
  out.origin_col = f.origin_col - rho;
  const auto& stab = stabilizer_elements(F.group);
  const int s_total = out.stabilizers;
  // Stabilizer part of g^-1 h depends only on (s_out, s_in).
  std::vector<int> sbar(static_cast<std::size_t>(s_total) * s_total);
  for (int so = 0; so < s_total; ++so)
    for (int si = 0; si < s_total; ++si) {
      const GroupElement c = compose(inverse(stab[so]), stab[si]);
      sbar[static_cast<std::size_t>(so) * s_total + si] =
          stabilizer_index(F.group, c.m, c.r);
    }
  for (int o = 0; o < F.k_out; ++o)
    for (int so = 0; so < s_total; ++so) {
      const GroupElement sinv = inverse(stab[so]);
      for (int i = 0; i < oh; ++i)
        for (int j = 0; j < ow; ++j) {
          const Point t = out.coord(i, j);
          T acc = T(0);
          for (int k = 0; k < f.channels; ++k)
            for (int si = 0; si < s_total; ++si) {
              const int sb = sbar[static_cast<std::size_t>(so) * s_total + si];
              for (int yi = 0; yi < f.height; ++yi)
                for (int yj = 0; yj < f.width; ++yj) {
                  const Point y = f.coord(yi, yj);
                  const Point q =
                      act_on_point(sinv, Point{y.u - t.u, y.v - t.v});
                  if (q.u < -rho || q.u > rho || q.v < -rho || q.v > rho)
                    continue;
                  acc += f.at(k, si, yi, yj) *
                         F.at(o, k, sb, q.v + rho, q.u + rho);
                }
            }
          out.at(o, so, i, j) = acc;
        }
    }
  return out;
}

// --- Fast path: filter transformation + planar correlation -----------------

// F+[o, s', k, s, a, b] = F[o, k, sbar, abar, bbar]; a pure gather. The
// flat layout doubles as the reshaped planar bank
// (S_out*K_out) x (S_in*K_in) x n x n.
template <typename T>
struct ExpandedFilterBank {
  int k_out = 0;
  int s_out = 1;
  int k_in = 0;
  int s_in = 1;
  int n = 0;
  std::vector<T> data;

  std::size_t index(int o, int so, int k, int si, int a, int b) const {
    return ((((static_cast<std::size_t>(o) * s_out + so) * k_in + k) * s_in +
             si) *
                n +
            a) *
               n +
           b;
  }
  T at(int o, int so, int k, int si, int a, int b) const {
    return data[index(o, so, k, si, a, b)];
  }

  PlanarFilterBank<T> reshaped() const {
    PlanarFilterBank<T> out(k_out * s_out, k_in * s_in, n);
    out.data = data;
    return out;
  }
};

template <typename T>
ExpandedFilterBank<T> transform_filters(const GFilterBank<T>& F,
                                        const TransformIndexTable& table) {
  if (table.group != F.group || table.s_in != F.s_in || table.n != F.n)
    throw ShapeMismatch("transform_filters: table does not match bank");
  ExpandedFilterBank<T> out;
  out.k_out = F.k_out;
  out.s_out = table.s_out;
  out.k_in = F.k_in;
  out.s_in = F.s_in;
  out.n = F.n;
  out.data.resize(static_cast<std::size_t>(F.k_out) * table.s_out * F.k_in *
                  F.s_in * F.n * F.n);
  const int block = F.s_in * F.n * F.n;
  std::size_t dst = 0;
  for (int o = 0; o < F.k_out; ++o)
    for (int so = 0; so < table.s_out; ++so)
      for (int k = 0; k < F.k_in; ++k) {
        const T* src = &F.data[(static_cast<std::size_t>(o) * F.k_in + k) *
                               block];
        const std::int32_t* idx = &table.flat[static_cast<std::size_t>(so) *
                                              block];
        for (int c = 0; c < block; ++c) out.data[dst++] = src[idx[c]];
      }
  return out;
}

// Fast G-correlation: transform_filters -> reshape -> planar_correlate ->
// reshape. Produces exactly the direct sums above.
template <typename T>
GStack<T> gcorr_fast(const PlanarStack<T>& f, const GFilterBank<T>& F,
                     const TransformIndexTable& table, int threads = 1) {
  if (F.kind != LayerKind::FirstLayer)
    throw ShapeMismatch("gcorr_fast(planar): needs a FirstLayer bank");
  const PlanarFilterBank<T> bank = transform_filters(F, table).reshaped();
  return unfold_stabilizer(planar_correlate(f, bank, threads), F.group);
}

template <typename T>
GStack<T> gcorr_fast(const GStack<T>& f, const GFilterBank<T>& F,
                     const TransformIndexTable& table, int threads = 1) {
  if (F.kind != LayerKind::Full)
    throw ShapeMismatch("gcorr_fast(gstack): needs a Full bank");
  if (f.group != F.group) throw GroupMismatch("gcorr_fast: group mismatch");
  const PlanarFilterBank<T> bank = transform_filters(F, table).reshaped();
  return unfold_stabilizer(planar_correlate(fold_stabilizer(f), bank, threads),
                           F.group);
}

// Gradient with respect to the first-layer input.
template <typename T>
PlanarStack<T> gcorr_backward_input_first(const GStack<T>& dout,
                                          const GFilterBank<T>& F,
                                          const TransformIndexTable& table,
                                          int threads = 1) {
  if (F.kind != LayerKind::FirstLayer)
    throw ShapeMismatch("gcorr_backward_input_first: needs FirstLayer bank");
  const PlanarFilterBank<T> bank = transform_filters(F, table).reshaped();
  return planar_correlate_backward_input(fold_stabilizer(dout), bank,
                                         dout.height + F.n - 1,
                                         dout.width + F.n - 1, threads);
}

// Gradient with respect to the full-layer input.
template <typename T>
GStack<T> gcorr_backward_input_full(const GStack<T>& dout,
                                    const GFilterBank<T>& F,
                                    const TransformIndexTable& table,
                                    int threads = 1) {
  if (F.kind != LayerKind::Full)
    throw ShapeMismatch("gcorr_backward_input_full: needs Full bank");
  const PlanarFilterBank<T> bank = transform_filters(F, table).reshaped();
  return unfold_stabilizer(
      planar_correlate_backward_input(fold_stabilizer(dout), bank,
                                      dout.height + F.n - 1,
                                      dout.width + F.n - 1, threads),
      F.group);
}

namespace detail {

// Scatter-add of the expanded-bank gradient back through the index table:
// dF[o, k, src(s', s, a, b)] += dW+[o, s', k, s, a, b], iterated in fixed
// (o, s', k, s, a, b) order.
template <typename T>
GFilterBank<T> scatter_filter_gradient(const PlanarFilterBank<T>& dw_expanded,
                                       GroupId group, LayerKind kind,
                                       const TransformIndexTable& table) {
  const int k_out = dw_expanded.k_out / table.s_out;
  const int k_in = dw_expanded.k_in / table.s_in;
  GFilterBank<T> df(group, kind, k_out, k_in, table.n);
  const int block = table.s_in * table.n * table.n;
  std::size_t src = 0;
  for (int o = 0; o < k_out; ++o)
    for (int so = 0; so < table.s_out; ++so)
      for (int k = 0; k < k_in; ++k) {
        T* dst = &df.data[(static_cast<std::size_t>(o) * k_in + k) * block];
        const std::int32_t* idx =
            &table.flat[static_cast<std::size_t>(so) * block];
        for (int c = 0; c < block; ++c) dst[idx[c]] += dw_expanded.data[src++];
      }
  return df;
}

}  // namespace detail

// Gradient with respect to the filters of a first-layer G-correlation.
template <typename T>
GFilterBank<T> gcorr_backward_filter(const GStack<T>& dout,
                                     const PlanarStack<T>& f_input,
                                     const TransformIndexTable& table,
                                     int threads = 1) {
  const PlanarFilterBank<T> dw = planar_correlate_backward_filter(
      fold_stabilizer(dout), f_input, table.n, threads);
  return detail::scatter_filter_gradient(dw, dout.group, LayerKind::FirstLayer,
                                         table);
}

// Gradient with respect to the filters of a full G-correlation.
template <typename T>
GFilterBank<T> gcorr_backward_filter(const GStack<T>& dout,
                                     const GStack<T>& f_input,
                                     const TransformIndexTable& table,
                                     int threads = 1) {
  if (dout.group != f_input.group)
    throw GroupMismatch("gcorr_backward_filter: group mismatch");
  const PlanarFilterBank<T> dw = planar_correlate_backward_filter(
      fold_stabilizer(dout), fold_stabilizer(f_input), table.n, threads);
  return detail::scatter_filter_gradient(dw, dout.group, LayerKind::Full,
                                         table);
}

}  // namespace gcnn
