// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <optional>

#include "cipcert/model.hpp"
#include "cipcert/types.hpp"

namespace cipcert {

inline constexpr std::size_t kDefaultEnumBudget = 10'000'000;

struct Witness {
  IntVec x;
  Int cardinality = 0;  // 1^T x
};

struct OracleVerdict {
  int verdict = kInfeasible;
  std::optional<Witness> witness;
};

// Number of x in Z^n with x >= 0 and 1^T x <= k; saturates at SIZE_MAX.
std::size_t simplex_lattice_count(int n, int k);

// Number of x in {0, ..., 2^k}^n; saturates at SIZE_MAX.
std::size_t box_lattice_count(int n, int k);

// Brute-force evaluation of the level-k feasibility function: scans x >= 0
// integral with 1^T x <= k in ascending lexicographic order and returns the
// first witness of A x <=_K beta, if any. Requires a nonnegative-variable
// instance. Throws BudgetError when the scan would exceed the budget; it
// never truncates silently.
OracleVerdict oracle_F(const Instance& inst, IntSpan beta, int k,
                       std::size_t budget = kDefaultEnumBudget);

// Same, over the box x in {0, ..., 2^k}^n used by the doubling engine.
int oracle_G(const Instance& inst, IntSpan beta, int k,
             std::size_t budget = kDefaultEnumBudget);

// Whether beta belongs to the level-set-minimal pool at level k: the program
// is feasible with the level-k cardinality bound, and every such solution
// hits beta exactly (A x = beta).
bool oracle_Bk(const Instance& inst, IntSpan beta, int k,
               std::size_t budget = kDefaultEnumBudget);

}  // namespace cipcert
