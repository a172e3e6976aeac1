#pragma once

// Reference implementations used as independent oracles by the test
// suites. Everything here is deliberately written from first principles
// (no calls into the library paths under test).

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using IMat3 = std::array<std::array<int, 3>, 3>;

inline IMat3 imat_identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline IMat3 imat_mul(const IMat3& a, const IMat3& b) {
  IMat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out[i][j] = 0;
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline int imat_det(const IMat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Adjugate-based inverse; exact for unimodular integer matrices.
inline IMat3 imat_inverse(const IMat3& m) {
  const int det = imat_det(m);
  IMat3 adj{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // adj[j][i] is the cofactor of m[i][j] (note the transpose)
      adj[j][i] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  IMat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = adj[i][j] * det;  // det in {1,-1}
  return out;
}

inline std::array<int, 2> imat_apply(const IMat3& m, int u, int v) {
  return {m[0][0] * u + m[0][1] * v + m[0][2],
          m[1][0] * u + m[1][1] * v + m[1][2]};
}

// Clockwise-on-screen quarter-turn rotation of a square K x N x N array
// about its grid center, matching the action of the matrix with
// cos/sin rows on (column, row-down) coordinates. One turn maps the
// cell at (row i, col j) to (row j, col N-1-i).
inline std::vector<double> rot90_square(const std::vector<double>& data,
                                        int channels, int n, int turns) {
  std::vector<double> cur = data;
  turns = ((turns % 4) + 4) % 4;
  for (int t = 0; t < turns; ++t) {
    std::vector<double> next(cur.size());
    for (int k = 0; k < channels; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          next[(static_cast<size_t>(k) * n + static_cast<size_t>(j)) * n +
               (n - 1 - i)] = cur[(static_cast<size_t>(k) * n + i) * n + j];
    cur = std::move(next);
  }
  return cur;
}

// Plain strided 2x2 max pool over a K x H x W array, window anchored at
// even coordinates; used to cross-check pool + subsample composition.
inline std::vector<double> strided_max_pool_2x2(const std::vector<double>& data,
                                                int channels, int h, int w) {
  const int oh = h / 2, ow = w / 2;
  std::vector<double> out(static_cast<size_t>(channels) * oh * ow);
  for (int k = 0; k < channels; ++k)
    for (int i = 0; i < oh; ++i)
      for (int j = 0; j < ow; ++j) {
        double best = data[(static_cast<size_t>(k) * h + 2 * i) * w + 2 * j];
        for (int di = 0; di < 2; ++di)
          for (int dj = 0; dj < 2; ++dj) {
            const double val =
                data[(static_cast<size_t>(k) * h + 2 * i + di) * w + 2 * j + dj];
            if (val > best) best = val;
          }
        out[(static_cast<size_t>(k) * oh + i) * ow + j] = best;
      }
  return out;
}

}  // namespace oracle
