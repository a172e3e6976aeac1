#include "gcnn/groups.hpp"

#include <ostream>
#include <string>

namespace gcnn {

namespace {

// cos(r*pi/2), sin(r*pi/2) for quarter turns are exact integers.
constexpr int kCos[4] = {1, 0, -1, 0};
constexpr int kSin[4] = {0, 1, 0, -1};

int mod4(int r) { return ((r % 4) + 4) % 4; }
int mod2(int m) { return ((m % 2) + 2) % 2; }

}  // namespace

const char* group_name(GroupId g) {
  switch (g) {
    case GroupId::Z2:
      return "z2";
    case GroupId::P4:
      return "p4";
    case GroupId::P4M:
      return "p4m";
  }
  return "?";
}

GroupId group_from_name(std::string_view name) {
  if (name == "z2" || name == "Z2") return GroupId::Z2;
  if (name == "p4" || name == "P4") return GroupId::P4;
  if (name == "p4m" || name == "P4M") return GroupId::P4M;
  throw InvalidArgument("unknown group name: " + std::string(name));
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  os << group_name(g.group) << "(";
  if (g.group == GroupId::P4M) os << "m=" << g.m << ",";
  if (g.group != GroupId::Z2) os << "r=" << g.r << ",";
  return os << "u=" << g.u << ",v=" << g.v << ")";
}

Mat3 mat_mul(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int acc = 0;
      for (int k = 0; k < 3; ++k) acc += lhs(i, k) * rhs(k, j);
      out(i, j) = acc;
    }
  return out;
}

GroupElement make_element(GroupId group, int m, int r, int u, int v) {
  GroupElement g{group, mod2(m), mod4(r), u, v};
  if (group == GroupId::Z2 && (g.m != 0 || g.r != 0))
    throw GroupMismatch("Z2 admits translations only");
  if (group == GroupId::P4 && g.m != 0)
    throw GroupMismatch("p4 has no mirror elements");
  return g;
}

GroupElement identity(GroupId group) { return GroupElement{group, 0, 0, 0, 0}; }

GroupElement translation(GroupId group, int u, int v) {
  return GroupElement{group, 0, 0, u, v};
}

Mat3 to_matrix(const GroupElement& a) {
  const int c = kCos[a.r];
  const int s = kSin[a.r];
  const int sign = a.m ? -1 : 1;
  Mat3 out;
  out(0, 0) = sign * c;
  out(0, 1) = -sign * s;
  out(0, 2) = a.u;
  out(1, 0) = s;
  out(1, 1) = c;
  out(1, 2) = a.v;
  out(2, 0) = 0;
  out(2, 1) = 0;
  out(2, 2) = 1;
  return out;
}

GroupElement from_matrix(const Mat3& mat, GroupId group) {
  if (mat(2, 0) != 0 || mat(2, 1) != 0 || mat(2, 2) != 1)
    throw InvalidMatrix("last row must be (0, 0, 1)");
  const int det = mat(0, 0) * mat(1, 1) - mat(0, 1) * mat(1, 0);
  if (det != 1 && det != -1)
    throw InvalidMatrix("2x2 block must have determinant +-1");
  const int m = (1 - det) / 2;
  // The second row is (sin, cos) regardless of the mirror flag.
  const int s = mat(1, 0);
  const int c = mat(1, 1);
  int r = -1;
  for (int k = 0; k < 4; ++k)
    if (kSin[k] == s && kCos[k] == c) r = k;
  if (r < 0) throw InvalidMatrix("second row is not a quarter-turn pair");
  const int sign = m ? -1 : 1;
  if (mat(0, 0) != sign * c || mat(0, 1) != -sign * s)
    throw InvalidMatrix("first row inconsistent with mirror/rotation block");
  if (group == GroupId::Z2 && (m != 0 || r != 0))
    throw InvalidMatrix("matrix is not a Z2 translation");
  if (group == GroupId::P4 && m != 0)
    throw InvalidMatrix("matrix has a reflection, not in p4");
  return GroupElement{group, m, r, mat(0, 2), mat(1, 2)};
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  if (a.group != b.group)
    throw GroupMismatch("cannot compose elements of different groups");
  return from_matrix(mat_mul(to_matrix(a), to_matrix(b)), a.group);
}

GroupElement inverse(const GroupElement& a) {
  // [R|t]^-1 = [R^T | -R^T t] since the block is orthogonal.
  const Mat3 mat = to_matrix(a);
  Mat3 inv;
  inv(0, 0) = mat(0, 0);
  inv(0, 1) = mat(1, 0);
  inv(1, 0) = mat(0, 1);
  inv(1, 1) = mat(1, 1);
  inv(0, 2) = -(inv(0, 0) * mat(0, 2) + inv(0, 1) * mat(1, 2));
  inv(1, 2) = -(inv(1, 0) * mat(0, 2) + inv(1, 1) * mat(1, 2));
  inv(2, 0) = 0;
  inv(2, 1) = 0;
  inv(2, 2) = 1;
  return from_matrix(inv, a.group);
}

Point act_on_point(const GroupElement& g, Point p) {
  const Mat3 mat = to_matrix(g);
  return Point{mat(0, 0) * p.u + mat(0, 1) * p.v + mat(0, 2),
               mat(1, 0) * p.u + mat(1, 1) * p.v + mat(1, 2)};
}

Point act_on_doubled(const GroupElement& g, Point dp) {
  const Mat3 mat = to_matrix(g);
  return Point{mat(0, 0) * dp.u + mat(0, 1) * dp.v + 2 * mat(0, 2),
               mat(1, 0) * dp.u + mat(1, 1) * dp.v + 2 * mat(1, 2)};
}

const std::vector<GroupElement>& stabilizer_elements(GroupId group) {
  static const std::vector<GroupElement> z2{identity(GroupId::Z2)};
  static const std::vector<GroupElement> p4 = [] {
    std::vector<GroupElement> out;
    for (int r = 0; r < 4; ++r) out.push_back(make_element(GroupId::P4, 0, r, 0, 0));
    return out;
  }();
  static const std::vector<GroupElement> p4m = [] {
    std::vector<GroupElement> out;
    for (int m = 0; m < 2; ++m)
      for (int r = 0; r < 4; ++r) out.push_back(make_element(GroupId::P4M, m, r, 0, 0));
    return out;
  }();
  switch (group) {
    case GroupId::Z2:
      return z2;
    case GroupId::P4:
      return p4;
    case GroupId::P4M:
      return p4m;
  }
  throw InvalidArgument("bad GroupId");
}

int stabilizer_size(GroupId group) {
  return static_cast<int>(stabilizer_elements(group).size());
}

int stabilizer_index(GroupId group, int m, int r) {
  switch (group) {
    case GroupId::Z2:
      if (m != 0 || r != 0) throw GroupMismatch("Z2 stabilizer is trivial");
      return 0;
    case GroupId::P4:
      if (m != 0) throw GroupMismatch("p4 has no mirror elements");
      return mod4(r);
    case GroupId::P4M:
      return mod2(m) * 4 + mod4(r);
  }
  throw InvalidArgument("bad GroupId");
}

}  // namespace gcnn
