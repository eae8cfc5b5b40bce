// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/engine.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "cipcert/errors.hpp"
#include "cipcert/oracle.hpp"
#include "test_support.hpp"

using namespace cipcert;

namespace {

// All images A x over x >= 0, 1^T x <= k, sorted and unique.
std::vector<IntVec> reachable_images(const Instance& inst, int k) {
  std::vector<IntVec> images;
  const int n = inst.num_cols();
  IntVec x(n, 0);
  std::function<void(int, Int)> scan = [&](int j, Int remaining) {
    if (j == n) {
      images.push_back(inst.apply(x));
      return;
    }
    for (Int v = 0; v <= remaining; ++v) {
      x[j] = v;
      scan(j + 1, remaining - v);
    }
    x[j] = 0;
  };
  scan(0, k);
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  return images;
}

// The pool as the enumeration oracle sees it: reachable images that are
// level-set minimal.
std::vector<IntVec> expected_pool(const Instance& inst, int k) {
  std::vector<IntVec> pool;
  for (const IntVec& image : reachable_images(inst, k))
    if (oracle_Bk(inst, image, k)) pool.push_back(image);
  return pool;
}

int min_feasible_level(const Instance& inst, const IntVec& beta, int kmax) {
  for (int k = 0; k <= kmax; ++k)
    if (oracle_F(inst, beta, k).verdict == kFeasible) return k;
  return -1;
}

}  // namespace

TEST_CASE("engine_init is the level-0 function") {
  Instance i1 = ts::make_i1();
  auto box = ts::make_box({-2, -2}, {2, 2});
  EngineState st = engine_init(i1, box);

  CHECK(st.pool.k == 0);
  CHECK(st.pool.elements == std::vector<IntVec>{{0, 0}});
  CHECK(st.table.k == 0);
  REQUIRE(st.trace.size() == 1);
  CHECK(st.trace[0].k == 0);
  CHECK(st.trace[0].pool == 1);
  CHECK(st.trace[0].total == box.size());
  CHECK(st.trace[0].solved == 9);  // both coordinates in {0,1,2}

  for (const IntVec& beta : box) {
    const bool inside = i1.cone().contains(beta);
    CHECK(st.table.verdicts.at(beta) == (inside ? kFeasible : kInfeasible));
    CHECK(st.table.solved.count(beta) == (inside ? 1u : 0u));
    if (inside) CHECK(st.table.first_feasible_k.at(beta) == 0);
  }
}

TEST_CASE("candidate sets on i1") {
  Instance i1 = ts::make_i1();
  EngineState st = engine_init(i1, ts::make_box({-3, -3}, {3, 3}));
  CHECK(candidate_pool(st) == std::vector<IntVec>{{0, 0}, {1, -1}});

  engine_step(st);
  CHECK(st.pool.k == 1);
  CHECK(st.pool.elements == std::vector<IntVec>{{0, 0}, {1, -1}});
  CHECK(candidate_pool(st) == std::vector<IntVec>{{0, 0}, {1, -1}, {2, -2}});

  engine_step(st);
  CHECK(st.pool.elements == std::vector<IntVec>{{0, 0}, {1, -1}, {2, -2}});
}

TEST_CASE("i1 run: frozen pools, levels and verdicts") {
  Instance i1 = ts::make_i1();
  auto box = ts::make_box({-5, -5}, {5, 5});
  EngineState st = engine_run(i1, box, 5);

  std::vector<IntVec> want;
  for (Int t = 0; t <= 5; ++t) want.push_back({t, -t});
  CHECK(st.pool.elements == want);
  CHECK(st.pool.k == 5);

  CHECK(st.table.first_feasible_k.at({5, -3}) == 3);
  CHECK(st.table.first_feasible_k.at({2, -2}) == 2);
  CHECK(st.table.verdicts.at({2, -3}) == kInfeasible);
  CHECK(st.table.solved.count({2, -3}) == 0);

  for (const IntVec& beta : box) {
    CAPTURE(beta[0]);
    CAPTURE(beta[1]);
    CHECK((st.table.verdicts.at(beta) == kFeasible) ==
          ts::i1_feasible(beta[0], beta[1], 5));
    if (auto it = st.table.first_feasible_k.find(beta);
        it != st.table.first_feasible_k.end()) {
      CHECK(ts::i1_feasible(beta[0], beta[1], it->second));
      CHECK(!(it->second > 0 &&
              ts::i1_feasible(beta[0], beta[1], it->second - 1)));
    }
  }

  REQUIRE(st.trace.size() == 6);
  std::size_t prev_solved = 0;
  for (int k = 0; k <= 5; ++k) {
    CHECK(st.trace[k].k == k);
    CHECK(st.trace[k].total == box.size());
    CHECK(st.trace[k].solved >= prev_solved);
    prev_solved = st.trace[k].solved;
  }
  CHECK(st.trace[5].pool == 6);
}

TEST_CASE("i2 pool shrinks to the frontier") {
  Instance i2 = ts::make_i2();
  auto box = ts::make_box({-4, -5}, {4, 4});
  EngineState st = engine_init(i2, box);
  CHECK(st.pool.elements == std::vector<IntVec>{{0, 0}});

  engine_step(st);
  CHECK(st.pool.elements == std::vector<IntVec>{{1, -3}});
  engine_step(st);
  CHECK(st.pool.elements == std::vector<IntVec>{{2, -6}});
  engine_step(st);
  CHECK(st.pool.elements == std::vector<IntVec>{{3, -9}});

  CHECK(st.table.first_feasible_k.at({0, 0}) == 0);
  CHECK(st.table.first_feasible_k.at({4, -5}) == 3);
  for (const IntVec& beta : box)
    CHECK((st.table.verdicts.at(beta) == kFeasible) ==
          ts::i2_feasible(beta[0], beta[1], 3));
}

TEST_CASE("pool equals the enumerated minimal pool on the corpus") {
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    ts::RandomCase rc = ts::random_case(seed);
    EngineState st = engine_init(rc.inst, rc.box);
    for (int k = 0; k <= 3; ++k) {
      CAPTURE(seed);
      CAPTURE(k);
      CHECK(st.pool.elements == expected_pool(rc.inst, k));
      if (k < 3) engine_step(st);
    }
    for (const IntVec& beta : rc.box) {
      CAPTURE(seed);
      CAPTURE(beta[0]);
      CHECK(st.table.verdicts.at(beta) ==
            oracle_F(rc.inst, beta, 3).verdict);
      const int want = min_feasible_level(rc.inst, beta, 3);
      if (auto it = st.table.first_feasible_k.find(beta);
          it != st.table.first_feasible_k.end()) {
        CHECK(it->second == want);
      } else {
        CHECK(want == -1);
      }
    }
  }
}

TEST_CASE("antichain, persistence and no readmission") {
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    ts::RandomCase rc = ts::random_case(seed);
    EngineState st = engine_init(rc.inst, rc.box);
    std::vector<std::vector<IntVec>> pools{st.pool.elements};
    std::map<IntVec, int> seen_ffk = st.table.first_feasible_k;
    std::size_t solved_size = st.table.solved.size();

    for (int k = 1; k <= 4; ++k) {
      engine_step(st);
      CAPTURE(seed);
      CAPTURE(k);

      // Antichain under the cone order, sorted and duplicate free.
      const auto& pool = st.pool.elements;
      CHECK(std::is_sorted(pool.begin(), pool.end()));
      CHECK(std::adjacent_find(pool.begin(), pool.end()) == pool.end());
      for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j)
          if (i != j) CHECK(!rc.inst.cone().leq(pool[i], pool[j]));

      // Solved verdicts and levels persist.
      CHECK(st.table.solved.size() >= solved_size);
      solved_size = st.table.solved.size();
      for (const auto& [beta, level] : seen_ffk)
        CHECK(st.table.first_feasible_k.at(beta) == level);
      seen_ffk = st.table.first_feasible_k;

      // An element that left the pool never comes back.
      for (std::size_t old = 0; old + 1 < pools.size(); ++old)
        for (const IntVec& gone : pools[old])
          if (!std::binary_search(pools[old + 1].begin(),
                                  pools[old + 1].end(), gone))
            CHECK(!st.pool.member(gone));
      pools.push_back(pool);
    }
  }
}

TEST_CASE("first feasible levels are superadditive") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    ts::RandomCase rc = ts::random_case(seed);
    EngineState st = engine_run(rc.inst, rc.box, 4);
    const auto& ffk = st.table.first_feasible_k;
    for (const auto& [b1, k1] : ffk) {
      for (const auto& [b2, k2] : ffk) {
        if (k1 + k2 > 4) continue;
        IntVec sum = vec_add(b1, b2);
        auto it = ffk.find(sum);
        if (st.table.verdicts.count(sum)) {
          CAPTURE(seed);
          REQUIRE(it != ffk.end());
          CHECK(it->second <= k1 + k2);
        }
      }
    }
  }
}

TEST_CASE("parallel evaluation matches serial") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    ts::RandomCase rc = ts::random_case(seed);
    EngineState serial = engine_run(rc.inst, rc.box, 4, 1);
    EngineState parallel = engine_run(rc.inst, rc.box, 4, 4);
    CHECK(serial.pool.elements == parallel.pool.elements);
    CHECK(serial.table.verdicts == parallel.table.verdicts);
    CHECK(serial.table.first_feasible_k == parallel.table.first_feasible_k);
    REQUIRE(serial.trace.size() == parallel.trace.size());
    for (std::size_t i = 0; i < serial.trace.size(); ++i) {
      CHECK(serial.trace[i].candidates == parallel.trace[i].candidates);
      CHECK(serial.trace[i].pool == parallel.trace[i].pool);
      CHECK(serial.trace[i].solved == parallel.trace[i].solved);
    }
  }
}

TEST_CASE("certificate_check decides the alternative") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    ts::RandomCase rc = ts::random_case(seed);
    EngineState st = engine_run(rc.inst, rc.box, 3);
    for (const IntVec& beta : rc.box) {
      CAPTURE(seed);
      AlternativeVerdict v = certificate_check(rc.inst, st, beta);
      if (st.table.verdicts.at(beta) == kFeasible) {
        REQUIRE(std::holds_alternative<Witness>(v));
        const Witness& w = std::get<Witness>(v);
        CHECK(w.cardinality <= st.table.first_feasible_k.at(beta));
        CHECK(rc.inst.cone().contains(
            vec_sub(beta, rc.inst.apply(w.x))));
      } else {
        REQUIRE(std::holds_alternative<InfeasibilityCertificate>(v));
        const auto& cert = std::get<InfeasibilityCertificate>(v);
        CHECK(cert.level == 3);
        CHECK(cert.pool == st.pool.elements);
      }
    }
  }
}

TEST_CASE("certificate_check at level zero") {
  Instance i1 = ts::make_i1();
  EngineState st = engine_init(i1, ts::make_box({-1, -1}, {1, 1}));
  AlternativeVerdict feas = certificate_check(i1, st, IntVec{1, 1});
  REQUIRE(std::holds_alternative<Witness>(feas));
  CHECK(std::get<Witness>(feas).cardinality == 0);

  AlternativeVerdict infeas = certificate_check(i1, st, IntVec{-1, -1});
  REQUIRE(std::holds_alternative<InfeasibilityCertificate>(infeas));
  CHECK(std::get<InfeasibilityCertificate>(infeas).level == 0);
  CHECK(std::get<InfeasibilityCertificate>(infeas).pool ==
        std::vector<IntVec>{{0, 0}});
}

TEST_CASE("certificate_check flags tampered state") {
  Instance i1 = ts::make_i1();
  auto box = ts::make_box({-3, -3}, {3, 3});

  // A pool that wrongly claims (2,-3) feasible disagrees with the witness
  // search, which finds nothing.
  EngineState st = engine_run(i1, box, 2);
  st.pool.elements = {{-5, -5}};
  CHECK_THROWS_AS(certificate_check(i1, st, IntVec{2, -3}),
                  InconsistentStateError);

  // A recorded level below the true first feasible level starves the
  // witness search while the pool still covers beta.
  st = engine_run(i1, box, 2);
  st.table.first_feasible_k[{2, -2}] = 1;
  CHECK_THROWS_AS(certificate_check(i1, st, IntVec{2, -2}),
                  InconsistentStateError);
}
