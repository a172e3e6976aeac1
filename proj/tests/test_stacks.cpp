#include <doctest.h>

#include <random>

#include "gcnn/stacks.hpp"
#include "support/oracles.hpp"

using namespace gcnn;

namespace {

PlanarStack<double> random_planar(int k, int h, int w, std::mt19937& rng,
                                  int margin = 0) {
  PlanarStack<double> f(k, h, w);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int c = 0; c < k; ++c)
    for (int i = margin; i < h - margin; ++i)
      for (int j = margin; j < w - margin; ++j) f.at(c, i, j) = val(rng);
  return f;
}

GStack<double> random_gstack(GroupId g, int k, int h, int w, std::mt19937& rng,
                             int margin = 0) {
  GStack<double> f(g, k, h, w);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int c = 0; c < k; ++c)
    for (int s = 0; s < f.stabilizers; ++s)
      for (int i = margin; i < h - margin; ++i)
        for (int j = margin; j < w - margin; ++j) f.at(c, s, i, j) = val(rng);
  return f;
}

GroupElement random_element(GroupId g, int max_t, std::mt19937& rng) {
  std::uniform_int_distribution<int> t(-max_t, max_t);
  std::uniform_int_distribution<int> pick(0, stabilizer_size(g) - 1);
  const GroupElement s = stabilizer_elements(g)[pick(rng)];
  return make_element(g, s.m, s.r, t(rng), t(rng));
}

}  // namespace

TEST_CASE("index_to_group round trip and values") {
  GStack<double> f(GroupId::P4, 1, 5, 5);
  CHECK(index_to_group(f, 0, f.origin_row, f.origin_col) == identity(GroupId::P4));
  CHECK(index_to_group(f, 1, f.origin_row, f.origin_col) ==
        make_element(GroupId::P4, 0, 1, 0, 0));

  // s=1 at (u,v)=(1,0): matrix must equal translation(1,0) * r1.
  const GroupElement g = index_to_group(f, 1, f.origin_row, f.origin_col + 1);
  const Mat3 expected = mat_mul(to_matrix(translation(GroupId::P4, 1, 0)),
                                to_matrix(make_element(GroupId::P4, 0, 1, 0, 0)));
  CHECK(to_matrix(g) == expected);
  CHECK(g.u == 1);
  CHECK(g.v == 0);

  for (int s = 0; s < f.stabilizers; ++s)
    for (int i = 0; i < f.height; ++i)
      for (int j = 0; j < f.width; ++j) {
        const auto idx = group_to_index(f, index_to_group(f, s, i, j));
        REQUIRE(idx.has_value());
        CHECK(*idx == GIndex{s, i, j});
      }

  CHECK_THROWS_AS(index_to_group(f, 4, 0, 0), IndexOutOfRange);
  CHECK_THROWS_AS(index_to_group(f, 0, 5, 0), IndexOutOfRange);
  CHECK_THROWS_AS(group_to_index(f, identity(GroupId::P4M)), GroupMismatch);
  CHECK_FALSE(group_to_index(f, translation(GroupId::P4, 9, 0)).has_value());
}

TEST_CASE("left_transform_planar basics") {
  PlanarStack<double> f(1, 3, 3);
  f.at(0, 1, 1) = 1.0;  // one-hot at the origin
  const auto same = left_transform_planar(identity(GroupId::P4), f);
  CHECK(same.data == f.data);

  const auto shifted = left_transform_planar(translation(GroupId::Z2, 1, 0), f);
  CHECK(shifted.at(0, 1, 2) == 1.0);  // (u,v) = (1,0)
  CHECK(shifted.at(0, 1, 1) == 0.0);

  PlanarStack<double> g(1, 3, 3);
  g.at(0, 1, 2) = 1.0;  // one-hot at (u,v) = (1,0)
  const auto rot = left_transform_planar(make_element(GroupId::P4, 0, 1, 0, 0), g);
  // act_on_point(r1, (1,0)) = (0,1)
  CHECK(act_on_point(make_element(GroupId::P4, 0, 1, 0, 0), {1, 0}) == Point{0, 1});
  CHECK(rot.at(0, 2, 1) == 1.0);
  CHECK(rot.at(0, 1, 2) == 0.0);
}

TEST_CASE("planar rotation equals array rotation about the grid center") {
  std::mt19937 rng(5);
  for (const int n : {3, 4, 5, 6, 9}) {
    const auto f = random_planar(2, n, n, rng);
    for (int r = 0; r < 4; ++r) {
      const auto lhs =
          left_transform_planar(make_element(GroupId::P4, 0, r, 0, 0), f);
      CHECK(lhs.data == oracle::rot90_square(f.data, 2, n, r));
    }
  }
}

TEST_CASE("planar translation equals integer shift with zero fill") {
  std::mt19937 rng(6);
  const auto f = random_planar(1, 6, 7, rng);
  const auto out = left_transform_planar(translation(GroupId::Z2, 2, -1), f);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 7; ++j) {
      const int si = i + 1, sj = j - 2;
      const double expect =
          (si >= 0 && si < 6 && sj >= 0 && sj < 7) ? f.at(0, si, sj) : 0.0;
      CHECK(out.at(0, i, j) == expect);
    }
}

TEST_CASE("left transforms are homomorphisms") {
  std::mt19937 rng(7);
  for (const GroupId group : {GroupId::P4, GroupId::P4M}) {
    const auto f = random_planar(2, 11, 11, rng, 4);
    const auto fg = random_gstack(group, 2, 11, 11, rng, 4);
    for (int trial = 0; trial < 50; ++trial) {
      const GroupElement g = random_element(group, 2, rng);
      const GroupElement h = random_element(group, 2, rng);
      const auto two_step = left_transform_planar(g, left_transform_planar(h, f));
      const auto one_step = left_transform_planar(compose(g, h), f);
      CHECK(two_step.data == one_step.data);

      const auto two_g = left_transform_g(g, left_transform_g(h, fg));
      const auto one_g = left_transform_g(compose(g, h), fg);
      CHECK(two_g.data == one_g.data);
    }
  }
}

TEST_CASE("left_transform_g moves the stabilizer axis") {
  GStack<double> f(GroupId::P4, 1, 3, 3);
  const GroupElement r1 = make_element(GroupId::P4, 0, 1, 0, 0);

  SUBCASE("one-hot at the identity goes to g") {
    f.at(0, 0, 1, 1) = 1.0;
    const auto out = left_transform_g(r1, f);
    CHECK(out.at(0, 1, 1, 1) == 1.0);
  }
  SUBCASE("one-hot at (s=0, u=1, v=0) goes to (s=1, u=0, v=1)") {
    f.at(0, 0, 1, 2) = 1.0;
    const auto out = left_transform_g(r1, f);
    // Oracle: g*h for h = translation(1,0) lands at r=1, (u,v) = (0,1).
    const GroupElement target = compose(r1, translation(GroupId::P4, 1, 0));
    CHECK(target == make_element(GroupId::P4, 0, 1, 0, 1));
    CHECK(out.at(0, 1, 2, 1) == 1.0);
  }
  SUBCASE("identity leaves the stack unchanged") {
    f.at(0, 2, 0, 1) = 3.0;
    CHECK(left_transform_g(identity(GroupId::P4), f).data == f.data);
  }
  SUBCASE("group mismatch is rejected") {
    CHECK_THROWS_AS(left_transform_g(identity(GroupId::P4M), f), GroupMismatch);
  }
}

TEST_CASE("quarter turns on mixed-parity stacks are rejected") {
  PlanarStack<double> f(1, 4, 5);
  CHECK_THROWS_AS(
      left_transform_planar(make_element(GroupId::P4, 0, 1, 0, 0), f),
      ShapeMismatch);
  // Half turns stay well defined for any shape.
  CHECK_NOTHROW(left_transform_planar(make_element(GroupId::P4, 0, 2, 0, 0), f));
}

TEST_CASE("involution") {
  SUBCASE("one-hot at identity is unchanged") {
    GStack<double> f(GroupId::P4, 1, 3, 3);
    f.at(0, 0, 1, 1) = 1.0;
    CHECK(involution(f).data == f.data);
  }
  SUBCASE("S=1 stack: point reflection") {
    std::mt19937 rng(9);
    auto f = random_gstack(GroupId::Z2, 2, 4, 7, rng);
    const auto out = involution(f);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 7; ++j)
          CHECK(out.at(k, 0, i, j) == f.at(k, 0, 3 - i, 6 - j));
  }
  SUBCASE("p4 one-hot moves to the inverse element") {
    GStack<double> f(GroupId::P4, 1, 3, 3);
    const GroupElement h = make_element(GroupId::P4, 0, 1, 1, 0);
    const auto hidx = group_to_index(f, h);
    REQUIRE(hidx.has_value());
    f.at(0, hidx->s, hidx->i, hidx->j) = 1.0;
    const GroupElement hinv = inverse(h);
    CHECK(hinv == make_element(GroupId::P4, 0, 3, 0, 1));
    const auto out = involution(f);
    const auto iidx = group_to_index(f, hinv);
    REQUIRE(iidx.has_value());
    CHECK(out.at(0, iidx->s, iidx->i, iidx->j) == 1.0);
  }
  SUBCASE("applying it twice is the identity bit-for-bit") {
    std::mt19937 rng(10);
    for (const GroupId g : {GroupId::Z2, GroupId::P4, GroupId::P4M}) {
      const auto f = random_gstack(g, 2, 5, 5, rng);
      CHECK(involution(involution(f)).data == f.data);
    }
  }
  SUBCASE("non-square p4 stacks are rejected") {
    GStack<double> f(GroupId::P4, 1, 3, 5);
    CHECK_THROWS_AS(involution(f), ShapeMismatch);
  }
}

TEST_CASE("fold/unfold stabilizer axis round trip") {
  std::mt19937 rng(11);
  const auto f = random_gstack(GroupId::P4M, 3, 5, 7, rng);
  const auto folded = fold_stabilizer(f);
  CHECK(folded.channels == 24);
  CHECK(folded.data == f.data);
  const auto back = unfold_stabilizer(folded, GroupId::P4M);
  CHECK(back.data == f.data);
  CHECK(back.channels == 3);
  CHECK_THROWS_AS(unfold_stabilizer(random_planar(3, 4, 4, rng), GroupId::P4),
                  ShapeMismatch);

  const auto planar = random_planar(2, 4, 4, rng);
  const auto gs = gstack_from_planar(planar);
  CHECK(gs.stabilizers == 1);
  CHECK(planar_from_gstack(gs).data == planar.data);
}
