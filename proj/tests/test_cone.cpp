// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/cone.hpp"

#include <doctest.h>
#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace cipcert;

TEST_CASE("orthant membership and order") {
  ConeSpec k({ConeBlock::orthant(2)});
  CHECK(k.contains(IntVec{1, 2}));
  CHECK(k.contains(IntVec{0, 0}));
  CHECK_FALSE(k.contains(IntVec{1, -1}));
  CHECK(k.leq(IntVec{1, 1}, IntVec{2, 1}));
  CHECK_FALSE(k.leq(IntVec{2, 1}, IntVec{1, 1}));
  CHECK(k.leq(IntVec{3, -5}, IntVec{3, -5}));
  CHECK_THROWS_AS((void)k.contains(IntVec{1, 2, 3}), DimensionError);
}

TEST_CASE("second-order membership is exact on the boundary") {
  ConeSpec k({ConeBlock::second_order(3)});
  CHECK(k.contains(IntVec{3, 4, 5}));
  CHECK_FALSE(k.contains(IntVec{3, 4, 4}));
  CHECK(k.contains(IntVec{0, 0, 0}));
  CHECK_FALSE(k.contains(IntVec{0, 0, -1}));

  ConeSpec plane({ConeBlock::second_order(2)});
  CHECK_FALSE(plane.leq(IntVec{1, -2}, IntVec{4, -5}));
  CHECK(plane.leq(IntVec{1, -2}, IntVec{2, 1}));

  ConeSpec ray({ConeBlock::second_order(1)});
  CHECK(ray.contains(IntVec{5}));
  CHECK_FALSE(ray.contains(IntVec{-1}));
}

TEST_CASE("second-order membership survives wide entries") {
  ConeSpec k({ConeBlock::second_order(2)});
  const Int big = Int{1} << 40;
  CHECK(k.contains(IntVec{big, big}));
  CHECK_FALSE(k.contains(IntVec{big + 1, big}));
  CHECK(k.contains(IntVec{-big, big}));
}

TEST_CASE("psd membership by packed upper triangle") {
  ConeSpec k({ConeBlock::psd(2)});
  CHECK(k.contains(IntVec{1, 0, 1}));        // identity
  CHECK_FALSE(k.contains(IntVec{1, 2, 1}));  // eigenvalues -1, 3
  CHECK(k.contains(IntVec{1, 1, 1}));
  CHECK(k.contains(IntVec{0, 0, 0}));
  CHECK(k.contains(IntVec{0, 0, 1}));       // zero pivot, zero row
  CHECK_FALSE(k.contains(IntVec{0, 1, 1}));  // zero pivot, nonzero row
  CHECK_FALSE(k.contains(IntVec{-1, 0, 0}));

  ConeSpec k3({ConeBlock::psd(3)});
  CHECK(k3.contains(IntVec{2, -1, 0, 2, -1, 2}));
  CHECK_FALSE(k3.contains(IntVec{1, 2, 0, 1, 0, 1}));
}

TEST_CASE("polyhedral membership and pointedness validation") {
  ConeSpec k({ConeBlock::polyhedral({{1, -1}, {0, 1}})});
  CHECK(k.contains(IntVec{3, 1}));
  CHECK(k.contains(IntVec{2, 0}));
  CHECK_FALSE(k.contains(IntVec{1, 2}));
  CHECK_FALSE(k.contains(IntVec{-1, 0}));

  CHECK_THROWS_AS(ConeBlock::polyhedral({{1, 1}}), ConeError);
  CHECK_THROWS_AS(ConeBlock::polyhedral({{1, 0}, {2, 0}}), ConeError);
  CHECK_THROWS_AS(ConeBlock::polyhedral({{1, 0}, {0, 1, 2}}), ConeError);
  CHECK_NOTHROW(ConeBlock::polyhedral({{1, 0}, {0, 1}, {1, 1}}));
}

TEST_CASE("product cones test block by block") {
  ConeSpec k({ConeBlock::orthant(1), ConeBlock::second_order(2)});
  CHECK(k.contains(IntVec{1, 0, 1}));
  CHECK(k.contains(IntVec{0, -2, 3}));
  CHECK_FALSE(k.contains(IntVec{-1, 0, 1}));
  CHECK_FALSE(k.contains(IntVec{1, 2, 1}));
}

TEST_CASE("dual membership") {
  ConeSpec orthant({ConeBlock::orthant(2)});
  CHECK(orthant.dual_contains({Rat(1, 2), Rat(0)}));
  CHECK_FALSE(orthant.dual_contains({Rat(1), Rat(-1)}));

  ConeSpec soc({ConeBlock::second_order(2)});
  CHECK(soc.dual_contains({Rat(-1), Rat(2)}));
  CHECK_FALSE(soc.dual_contains({Rat(-3), Rat(2)}));

  ConeSpec poly({ConeBlock::polyhedral({{1, -1}, {0, 1}})});
  // u = 1 * (1, -1) + 0 * (0, 1)
  CHECK(poly.dual_contains({Rat(1), Rat(-1)}));
  CHECK(poly.dual_contains({Rat(0), Rat(1)}));
  CHECK(poly.dual_contains({Rat(2), Rat(-1)}));
  CHECK_FALSE(poly.dual_contains({Rat(-1), Rat(0)}));
  CHECK_FALSE(poly.dual_contains({Rat(1), Rat(-2)}));

  ConeSpec psd({ConeBlock::psd(2)});
  CHECK(psd.dual_contains({Rat(1), Rat(0), Rat(1)}));
  CHECK_FALSE(psd.dual_contains({Rat(1), Rat(2), Rat(1)}));
}

TEST_CASE("floor to integral") {
  ConeSpec orthant({ConeBlock::orthant(2)});
  IntVec f = orthant.floor_to_integral({Rat(7, 2), Rat(-7, 2)});
  CHECK(f == IntVec{3, -4});
  f = orthant.floor_to_integral({Rat(2), Rat(-5)});
  CHECK(f == IntVec{2, -5});

  ConeSpec unit_poly({ConeBlock::polyhedral({{0, 1}, {1, 0}})});
  f = unit_poly.floor_to_integral({Rat(1, 3), Rat(-1, 3)});
  CHECK(f == IntVec{0, -1});

  ConeSpec soc({ConeBlock::second_order(2)});
  CHECK_THROWS_AS((void)soc.floor_to_integral({Rat(1), Rat(1)}),
                  UnsupportedConeError);
  ConeSpec poly({ConeBlock::polyhedral({{1, -1}, {0, 1}})});
  CHECK_THROWS_AS((void)poly.floor_to_integral({Rat(1), Rat(1)}),
                  UnsupportedConeError);
}

namespace {

IntVec random_vec(ts::Rng& rng, int dim, Int lo, Int hi) {
  IntVec v(dim);
  for (Int& x : v) x = rng.uniform(lo, hi);
  return v;
}

std::vector<ConeSpec> property_cones() {
  std::vector<ConeSpec> cones;
  cones.emplace_back(std::vector<ConeBlock>{ConeBlock::orthant(3)});
  cones.emplace_back(std::vector<ConeBlock>{ConeBlock::second_order(3)});
  cones.emplace_back(std::vector<ConeBlock>{
      ConeBlock::polyhedral({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 1}})});
  cones.emplace_back(std::vector<ConeBlock>{ConeBlock::orthant(1),
                                            ConeBlock::second_order(2)});
  return cones;
}

}  // namespace

TEST_CASE("cones are pointed: only zero sits in K and -K") {
  ts::Rng rng(7001);
  for (const ConeSpec& k : property_cones()) {
    for (int t = 0; t < 4000; ++t) {
      IntVec v = random_vec(rng, k.total_dim(), -6, 6);
      IntVec neg(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
      if (k.contains(v) && k.contains(neg)) {
        for (Int x : v) CHECK(x == 0);
      }
    }
  }
}

TEST_CASE("membership is closed under addition") {
  ts::Rng rng(7002);
  for (const ConeSpec& k : property_cones()) {
    int hits = 0;
    for (int t = 0; t < 6000 && hits < 500; ++t) {
      IntVec v = random_vec(rng, k.total_dim(), -5, 8);
      IntVec w = random_vec(rng, k.total_dim(), -5, 8);
      if (!k.contains(v) || !k.contains(w)) continue;
      ++hits;
      CHECK(k.contains(vec_add(v, w)));
    }
    CHECK(hits > 0);
  }
}

TEST_CASE("leq is transitive") {
  ts::Rng rng(7003);
  for (const ConeSpec& k : property_cones()) {
    int hits = 0;
    for (int t = 0; t < 8000 && hits < 300; ++t) {
      IntVec b1 = random_vec(rng, k.total_dim(), -4, 4);
      IntVec d1 = random_vec(rng, k.total_dim(), -3, 6);
      IntVec d2 = random_vec(rng, k.total_dim(), -3, 6);
      if (!k.contains(d1) || !k.contains(d2)) continue;
      ++hits;
      IntVec b2 = vec_add(b1, d1);
      IntVec b3 = vec_add(b2, d2);
      CHECK(k.leq(b1, b2));
      CHECK(k.leq(b2, b3));
      CHECK(k.leq(b1, b3));
    }
    CHECK(hits > 0);
  }
}

TEST_CASE("dual vectors pair nonnegatively with members") {
  ts::Rng rng(7004);
  for (const ConeSpec& k : property_cones()) {
    int pairs = 0;
    for (int t = 0; t < 8000 && pairs < 300; ++t) {
      RatVec u(k.total_dim());
      for (Rat& x : u) {
        x = Rat(rng.uniform(-4, 4), rng.uniform(1, 3));
        x.canonicalize();
      }
      if (!k.dual_contains(u)) continue;
      IntVec v = random_vec(rng, k.total_dim(), -5, 8);
      if (!k.contains(v)) continue;
      ++pairs;
      Rat dot(0);
      for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * to_rat(v[i]);
      CHECK(sgn(dot) >= 0);
    }
    CHECK(pairs > 0);
  }
}

TEST_CASE("second-order verdicts agree with floating-point norms") {
  ts::Rng rng(7005);
  ConeSpec k({ConeBlock::second_order(4)});
  for (int t = 0; t < 20000; ++t) {
    IntVec v = random_vec(rng, 4, -100, 100);
    double norm = 0;
    for (int i = 0; i < 3; ++i) norm += double(v[i]) * double(v[i]);
    norm = std::sqrt(norm);
    const bool approx = v[3] >= 0 && double(v[3]) + 1e-9 >= norm;
    CHECK(k.contains(v) == approx);
  }
}

TEST_CASE("psd verdicts agree with floating-point eigenvalues") {
  ts::Rng rng(7006);
  ConeSpec k({ConeBlock::psd(3)});
  for (int t = 0; t < 5000; ++t) {
    IntVec packed = random_vec(rng, 6, -5, 5);
    Eigen::Matrix3d s;
    int idx = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        s(i, j) = double(packed[idx]);
        s(j, i) = double(packed[idx]);
        ++idx;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(s);
    const double min_eig = eig.eigenvalues().minCoeff();
    const bool exact = k.contains(packed);
    // Inside the band around zero the exact test is the arbiter; floats
    // cannot distinguish singular-PSD from barely-indefinite there.
    if (min_eig > 1e-9)
      CHECK(exact);
    else if (min_eig < -1e-9)
      CHECK_FALSE(exact);
  }
}

TEST_CASE("rational psd duals accept fractional boundary points") {
  ConeSpec k({ConeBlock::psd(2)});
  // [[1/2, 1/2], [1/2, 1/2]] is singular PSD
  CHECK(k.dual_contains({Rat(1, 2), Rat(1, 2), Rat(1, 2)}));
  CHECK_FALSE(k.dual_contains({Rat(1, 2), Rat(1, 2), Rat(1, 4)}));
}
