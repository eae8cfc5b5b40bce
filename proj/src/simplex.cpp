// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/simplex.hpp"

#include <cstddef>

#include "cipcert/errors.hpp"

namespace cipcert {

// Phase-1 simplex over the system rows * z = rhs, z >= 0. One artificial
// variable per row forms the starting basis; Bland's rule (lowest eligible
// index enters, lowest basic index breaks ratio ties) rules out cycling, and
// artificials are retired for good once they leave the basis.
std::optional<RatVec> find_nonnegative_solution(std::vector<RatVec> rows,
                                                RatVec rhs) {
  const std::size_t r = rows.size();
  if (rhs.size() != r) throw DimensionError("simplex: rhs length mismatch");
  const std::size_t n = r == 0 ? 0 : rows[0].size();
  for (const RatVec& row : rows)
    if (row.size() != n) throw DimensionError("simplex: ragged row lengths");
  if (r == 0) return RatVec{};

  for (std::size_t i = 0; i < r; ++i)
    if (sgn(rhs[i]) < 0) {
      for (Rat& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
    }

  const std::size_t total = n + r;
  std::vector<RatVec> t(r, RatVec(total, Rat(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = rows[i][j];
    t[i][n + i] = 1;
  }
  std::vector<std::size_t> basis(r);
  for (std::size_t i = 0; i < r; ++i) basis[i] = n + i;

  // Reduced costs for minimizing the artificial sum; artificial columns
  // start basic with reduced cost zero.
  RatVec rc(total, Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rat acc(0);
    for (std::size_t i = 0; i < r; ++i) acc += t[i][j];
    rc[j] = -acc;
  }
  std::vector<bool> alive(total, true);

  for (;;) {
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j)
      if (alive[j] && sgn(rc[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == total) break;

    std::size_t leave = r;
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      if (leave == r) {
        leave = i;
        continue;
      }
      Rat lhs = rhs[i] * t[leave][enter];
      Rat rhs_cmp = rhs[leave] * t[i][enter];
      const int c = cmp(lhs, rhs_cmp);
      if (c < 0 || (c == 0 && basis[i] < basis[leave])) leave = i;
    }
    if (leave == r)
      throw Error("simplex: phase-1 objective unbounded; inconsistent tableau");

    Rat pivot = t[leave][enter];
    for (std::size_t j = 0; j < total; ++j) t[leave][j] /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j < total; ++j) t[i][j] -= f * t[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    if (sgn(rc[enter]) != 0) {
      Rat f = rc[enter];
      for (std::size_t j = 0; j < total; ++j) rc[j] -= f * t[leave][j];
    }
    if (basis[leave] >= n) alive[basis[leave]] = false;
    basis[leave] = enter;
  }

  Rat artificial_sum(0);
  for (std::size_t i = 0; i < r; ++i)
    if (basis[i] >= n) artificial_sum += rhs[i];
  if (sgn(artificial_sum) != 0) return std::nullopt;

  RatVec z(n, Rat(0));
  for (std::size_t i = 0; i < r; ++i)
    if (basis[i] < n) z[basis[i]] = rhs[i];
  return z;
}

}  // namespace cipcert
