// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/doubling.hpp"

#include <chrono>
#include <string>

namespace cipcert {

namespace {

void check_instance(const Instance& inst, IntSpan beta) {
  if (!inst.all_nonnegative())
    throw Error("doubling engine requires a nonnegative-variable instance; "
                "split free variables first");
  if (static_cast<int>(beta.size()) != inst.num_rows())
    throw DimensionError("doubling: beta length does not match row count");
  if (inst.num_cols() > 26)
    throw BudgetError("doubling engine scans 2^n shift vectors; n = " +
                      std::to_string(inst.num_cols()) + " is beyond reach");
}

void build_shift_basis(const Instance& inst, GMemo& memo) {
  const int n = inst.num_cols();
  const std::size_t count = std::size_t{1} << n;
  memo.shift_basis.reserve(count);
  IntVec y(n, 0);
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (int j = 0; j < n; ++j) y[j] = (mask >> j) & 1;
    memo.shift_basis.push_back(inst.apply(y));
  }
}

}  // namespace

int g_base(const Instance& inst, IntSpan beta) {
  check_instance(inst, beta);
  const int n = inst.num_cols();
  IntVec y(n, 0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (int j = 0; j < n; ++j) y[j] = (mask >> j) & 1;
    if (inst.cone().contains(vec_sub(beta, inst.apply(y)))) return kFeasible;
  }
  return kInfeasible;
}

int g_eval(const Instance& inst, GMemo& memo, int k, IntVec beta) {
  check_instance(inst, beta);
  if (k < 0) throw Error("doubling: negative level");
  if (k > 62) throw Error("doubling: level " + std::to_string(k) +
                          " would overflow the shift scale");
  if (memo.shift_basis.empty()) build_shift_basis(inst, memo);

  std::pair<int, IntVec> key{k, std::move(beta)};
  if (auto it = memo.cache.find(key); it != memo.cache.end())
    return it->second;

  int verdict = kInfeasible;
  if (k == 0) {
    verdict = g_base(inst, key.second);
  } else {
    const Int scale = Int{1} << (k - 1);
    const int m = inst.num_rows();
    for (const IntVec& base : memo.shift_basis) {
      IntVec shifted(m);
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        Int scaled;
        if (__builtin_mul_overflow(scale, base[i], &scaled) ||
            __builtin_sub_overflow(key.second[i], scaled, &shifted[i]))
          ok = false;
      }
      if (!ok) throw Error("integer overflow in doubling shift");
      if (g_eval(inst, memo, k - 1, std::move(shifted)) == kFeasible) {
        verdict = kFeasible;
        break;
      }
    }
  }

  if (memo.cache.size() >= memo.budget)
    throw BudgetError("doubling memo exceeds its budget of " +
                      std::to_string(memo.budget) + " entries");
  memo.cache.emplace(std::move(key), verdict);
  return verdict;
}

GRun g_run(const Instance& inst, const std::vector<IntVec>& rhs_list, int kmax,
           std::size_t budget) {
  if (kmax < 0) throw Error("doubling: negative level bound");
  GMemo memo;
  memo.budget = budget;
  GRun out;
  out.verdicts.assign(rhs_list.size(), kInfeasible);
  out.first_zero_k.assign(rhs_list.size(), std::nullopt);
  using Clock = std::chrono::steady_clock;
  for (int k = 0; k <= kmax; ++k) {
    const auto start = Clock::now();
    for (std::size_t i = 0; i < rhs_list.size(); ++i) {
      if (out.first_zero_k[i]) continue;
      if (g_eval(inst, memo, k, rhs_list[i]) == kFeasible)
        out.first_zero_k[i] = k;
    }
    std::size_t solved = 0;
    for (const auto& f : out.first_zero_k)
      if (f) ++solved;
    out.levels.push_back(GRun::Level{
        k, solved,
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                              start)
            .count()});
  }
  for (std::size_t i = 0; i < rhs_list.size(); ++i)
    if (out.first_zero_k[i]) out.verdicts[i] = kFeasible;
  return out;
}

}  // namespace cipcert
