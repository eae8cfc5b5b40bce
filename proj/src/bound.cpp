// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/bound.hpp"

#include <algorithm>
#include <utility>

#include "cipcert/simplex.hpp"

namespace cipcert {

bool verify_certificate(const Instance& inst, const RatVec& u) {
  if (static_cast<int>(u.size()) != inst.num_rows())
    throw DimensionError("certificate length does not match row count");
  if (!inst.cone().dual_contains(u)) return false;
  for (const IntVec& col : inst.columns()) {
    Rat dot(0);
    for (int i = 0; i < inst.num_rows(); ++i) dot += u[i] * to_rat(col[i]);
    if (dot < 1) return false;
  }
  return true;
}

int compute_kbar(const RatVec& u, const std::vector<IntVec>& rhs_list) {
  if (rhs_list.empty()) return 0;
  Rat best(0);
  bool first = true;
  for (const IntVec& beta : rhs_list) {
    if (u.size() != beta.size())
      throw DimensionError("certificate length does not match rhs length");
    Rat dot(0);
    for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * to_rat(beta[i]);
    if (first || dot > best) {
      best = std::move(dot);
      first = false;
    }
  }
  const Int ceiling = rat_ceil(best);
  if (ceiling > INT32_MAX) throw Error("iteration bound does not fit in int");
  return static_cast<int>(std::max<Int>(0, ceiling));
}

DualLpResult solve_dual_lp(const Instance& inst) {
  const int m = inst.num_rows();
  const int n = inst.num_cols();

  // Generators of the dual cone, one block at a time: unit vectors for
  // orthants, the rows of M for polyhedral blocks.
  std::vector<IntVec> generators;
  int offset = 0;
  for (const ConeBlock& b : inst.cone().blocks()) {
    switch (b.kind) {
      case ConeKind::kOrthant:
        for (int i = 0; i < b.dim; ++i) {
          IntVec g(m, 0);
          g[offset + i] = 1;
          generators.push_back(std::move(g));
        }
        break;
      case ConeKind::kPolyhedral:
        for (const IntVec& row : b.rows) {
          IntVec g(m, 0);
          for (int i = 0; i < b.dim; ++i) g[offset + i] = row[i];
          generators.push_back(std::move(g));
        }
        break;
      case ConeKind::kSecondOrder:
      case ConeKind::kPsd:
        return DualLpResult{DualLpStatus::kUnsupportedCone, {}};
    }
    offset += b.dim;
  }

  // u = sum_t y_t * g_t with y >= 0 must satisfy A^T u >= 1. In generator
  // weights that reads G y - s = 1 with slacks s >= 0.
  const std::size_t p = generators.size();
  std::vector<RatVec> rows(n, RatVec(p + n, Rat(0)));
  RatVec rhs(n, Rat(1));
  for (int j = 0; j < n; ++j) {
    for (std::size_t t = 0; t < p; ++t) {
      __int128 acc = 0;
      for (int i = 0; i < m; ++i)
        acc += static_cast<__int128>(inst.matrix()[i][j]) * generators[t][i];
      if (acc > INT64_MAX || acc < INT64_MIN)
        throw Error("integer overflow while assembling the dual system");
      rows[j][t] = to_rat(static_cast<Int>(acc));
    }
    rows[j][p + j] = Rat(-1);
  }

  auto solution = find_nonnegative_solution(std::move(rows), std::move(rhs));
  if (!solution) return DualLpResult{DualLpStatus::kNoCertificate, {}};

  RatVec u(m, Rat(0));
  for (std::size_t t = 0; t < p; ++t)
    for (int i = 0; i < m; ++i) u[i] += (*solution)[t] * to_rat(generators[t][i]);
  if (!verify_certificate(inst, u))
    throw Error("internal: dual LP produced a vector that fails verification");
  return DualLpResult{DualLpStatus::kFound, std::move(u)};
}

}  // namespace cipcert
