#pragma once

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "gcnn/errors.hpp"

namespace gcnn {

// The three plane symmetry groups supported by the toolkit.
enum class GroupId { Z2, P4, P4M };

const char* group_name(GroupId g);
GroupId group_from_name(std::string_view name);  // "z2", "p4", "p4m"

// A point of the pixel grid. u runs along columns (horizontal), v along
// rows (vertical, increasing downward).
struct Point {
  int u = 0;
  int v = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Element of Z^2, p4 or p4m in canonical integer form:
//   m in {0,1}  mirror flag (always 0 for Z2/P4)
//   r in {0..3} quarter-turn count (always 0 for Z2)
//   u, v        integer translation in pixels
// All arithmetic on elements is exact; construction goes through
// make_element which canonicalizes and validates.
struct GroupElement {
  GroupId group = GroupId::Z2;
  int m = 0;
  int r = 0;
  int u = 0;
  int v = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

// Homogeneous 3x3 integer matrix with last row (0,0,1). The upper-left
// 2x2 block of a valid group matrix is a signed permutation matrix.
struct Mat3 {
  std::array<int, 9> a{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major

  int operator()(int i, int j) const { return a[i * 3 + j]; }
  int& operator()(int i, int j) { return a[i * 3 + j]; }
  friend bool operator==(const Mat3&, const Mat3&) = default;
};

Mat3 mat_mul(const Mat3& lhs, const Mat3& rhs);

// Canonicalizing constructor: r is reduced mod 4 and m mod 2.
// Throws GroupMismatch if the reduced element does not belong to the
// stated group (nonzero m for Z2/P4, nonzero r for Z2).
GroupElement make_element(GroupId group, int m, int r, int u, int v);

GroupElement identity(GroupId group);
GroupElement translation(GroupId group, int u, int v);

Mat3 to_matrix(const GroupElement& a);

// Recovers the unique canonical element from a valid group matrix.
// m comes from the determinant of the 2x2 block, r from a lookup over
// the valid blocks (no floating point), (u,v) from the last column.
// Throws InvalidMatrix if the matrix is not an element of `group`.
GroupElement from_matrix(const Mat3& mat, GroupId group);

// Matrix-multiplication composition, per the tuple->matrix->tuple route.
GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return compose(a, b);
}

// Applies g to a pixel coordinate: first two entries of M_g * (u, v, 1)^T.
Point act_on_point(const GroupElement& g, Point p);

// Same action on the half-integer grid: coordinates are doubled so the
// center of an even-sized array (which lies between pixels) is
// representable. Linear part unchanged, translation contributes (2u, 2v).
Point act_on_doubled(const GroupElement& g, Point dp);

// Elements fixing the origin, in frozen canonical order:
//   Z2  -> [e]
//   P4  -> r = 0,1,2,3
//   P4M -> (m,r) lexicographic: (0,0)..(0,3),(1,0)..(1,3)
// Index tables and checkpoint layouts depend on this order.
const std::vector<GroupElement>& stabilizer_elements(GroupId group);
int stabilizer_size(GroupId group);

// Position of the stabilizer element with the given (m, r) in the order
// above. Translation parts are not consulted.
int stabilizer_index(GroupId group, int m, int r);

}  // namespace gcnn
