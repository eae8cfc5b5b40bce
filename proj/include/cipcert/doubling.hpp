// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cipcert/model.hpp"
#include "cipcert/oracle.hpp"
#include "cipcert/types.hpp"

namespace cipcert {

// Memo table for the doubling recursion, keyed by (level, beta). shift_basis
// caches A*y for every y in {0,1}^n and is built on first use.
struct GMemo {
  std::size_t budget = kDefaultEnumBudget;
  std::map<std::pair<int, IntVec>, int> cache;
  std::vector<IntVec> shift_basis;
};

// Level 0 of the doubling recursion: feasibility over x in {0,1}^n.
int g_base(const Instance& inst, IntSpan beta);

// Level k: feasible iff some shift beta - 2^(k-1) * A * y with y in {0,1}^n
// is feasible at level k-1. Covers all x in {0, ..., 2^k}^n, so level counts
// grow logarithmically in the cardinality bound.
int g_eval(const Instance& inst, GMemo& memo, int k, IntVec beta);

struct GRun {
  struct Level {
    int k = 0;
    std::size_t solved = 0;
    long long elapsed_ms = 0;
  };
  std::vector<int> verdicts;                     // at kmax, indexed as rhs_list
  std::vector<std::optional<int>> first_zero_k;  // smallest level with verdict 0
  std::vector<Level> levels;
};

// Evaluates every tracked beta at levels 0..kmax, reusing the memo across
// levels and skipping betas once they turn feasible (levels are monotone).
GRun g_run(const Instance& inst, const std::vector<IntVec>& rhs_list, int kmax,
           std::size_t budget = kDefaultEnumBudget);

}  // namespace cipcert
