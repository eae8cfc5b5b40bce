// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace cipcert {

namespace {

constexpr unsigned __int128 kSaturated =
    static_cast<unsigned __int128>(SIZE_MAX);

void check_preconditions(const Instance& inst, IntSpan beta, int k) {
  if (!inst.all_nonnegative())
    throw Error("oracle requires a nonnegative-variable instance; split free "
                "variables first");
  if (static_cast<int>(beta.size()) != inst.num_rows())
    throw DimensionError("oracle: beta length does not match row count");
  if (k < 0) throw Error("oracle: negative level " + std::to_string(k));
}

void check_budget(std::size_t count, std::size_t budget, const char* what) {
  if (count > budget)
    throw BudgetError(std::string(what) + " would scan " +
                      (count == SIZE_MAX ? std::string("more than 2^64")
                                         : std::to_string(count)) +
                      " points, beyond the budget of " + std::to_string(budget));
}

}  // namespace

std::size_t simplex_lattice_count(int n, int k) {
  // C(n + k, n), computed as a rising product that stays integral stepwise.
  unsigned __int128 c = 1;
  for (int i = 1; i <= n; ++i) {
    c = c * static_cast<unsigned>(k + i) / static_cast<unsigned>(i);
    if (c >= kSaturated) return SIZE_MAX;
  }
  return static_cast<std::size_t>(c);
}

std::size_t box_lattice_count(int n, int k) {
  if (k >= 63) return SIZE_MAX;
  unsigned __int128 side = (static_cast<unsigned __int128>(1) << k) + 1;
  unsigned __int128 c = 1;
  for (int i = 0; i < n; ++i) {
    c *= side;
    if (c >= kSaturated) return SIZE_MAX;
  }
  return static_cast<std::size_t>(c);
}

OracleVerdict oracle_F(const Instance& inst, IntSpan beta, int k,
                       std::size_t budget) {
  check_preconditions(inst, beta, k);
  check_budget(simplex_lattice_count(inst.num_cols(), k), budget,
               "oracle_F");
  const int n = inst.num_cols();
  IntVec x(n, 0);
  std::optional<Witness> found;
  std::function<bool(int, Int)> scan = [&](int j, Int remaining) {
    if (j == n) {
      if (inst.cone().contains(vec_sub(beta, inst.apply(x)))) {
        Int card = 0;
        for (Int v : x) card += v;
        found = Witness{x, card};
        return true;
      }
      return false;
    }
    for (Int v = 0; v <= remaining; ++v) {
      x[j] = v;
      if (scan(j + 1, remaining - v)) return true;
    }
    x[j] = 0;
    return false;
  };
  scan(0, k);
  if (found) return OracleVerdict{kFeasible, std::move(found)};
  return OracleVerdict{kInfeasible, std::nullopt};
}

int oracle_G(const Instance& inst, IntSpan beta, int k, std::size_t budget) {
  check_preconditions(inst, beta, k);
  check_budget(box_lattice_count(inst.num_cols(), k), budget, "oracle_G");
  const int n = inst.num_cols();
  const Int top = Int{1} << k;
  IntVec x(n, 0);
  for (;;) {
    if (inst.cone().contains(vec_sub(beta, inst.apply(x)))) return kFeasible;
    int i = n;
    while (i > 0) {
      --i;
      if (x[i] < top) {
        ++x[i];
        for (int j = i + 1; j < n; ++j) x[j] = 0;
        break;
      }
      if (i == 0) return kInfeasible;
    }
  }
}

bool oracle_Bk(const Instance& inst, IntSpan beta, int k, std::size_t budget) {
  check_preconditions(inst, beta, k);
  check_budget(simplex_lattice_count(inst.num_cols(), k), budget,
               "oracle_Bk");
  const int n = inst.num_cols();
  IntVec x(n, 0);
  bool any = false;
  bool bad = false;
  std::function<bool(int, Int)> scan = [&](int j, Int remaining) {
    if (j == n) {
      IntVec image = inst.apply(x);
      if (inst.cone().contains(vec_sub(beta, image))) {
        any = true;
        if (!std::equal(image.begin(), image.end(), beta.begin(), beta.end()))
          bad = true;
      }
      return any && bad;
    }
    for (Int v = 0; v <= remaining; ++v) {
      x[j] = v;
      if (scan(j + 1, remaining - v)) return true;
    }
    x[j] = 0;
    return false;
  };
  scan(0, k);
  return any && !bad;
}

}  // namespace cipcert
