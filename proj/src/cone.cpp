// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/cone.hpp"

#include <string>
#include <utility>

#include "cipcert/simplex.hpp"

namespace cipcert {

namespace {

// Products of two values below this bound fit in 128 bits even after summing
// 2^31 terms, so the fast paths below cannot overflow.
constexpr Int kNarrow = Int{1} << 31;

bool all_narrow(IntSpan v) {
  for (Int x : v)
    if (x > kNarrow || x < -kNarrow) return false;
  return true;
}

bool orthant_contains(IntSpan v) {
  for (Int x : v)
    if (x < 0) return false;
  return true;
}

bool second_order_contains(IntSpan v) {
  const Int t = v[v.size() - 1];
  if (t < 0) return false;
  if (all_narrow(v)) {
    __int128 lhs = static_cast<__int128>(t) * t;
    __int128 rhs = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      rhs += static_cast<__int128>(v[i]) * v[i];
    return lhs >= rhs;
  }
  mpz_class lhs = mpz_class(static_cast<long>(t)) * static_cast<long>(t);
  mpz_class rhs = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    rhs += mpz_class(static_cast<long>(v[i])) * static_cast<long>(v[i]);
  return lhs >= rhs;
}

bool row_dot_nonneg(const IntVec& row, IntSpan v) {
  if (all_narrow(row) && all_narrow(v)) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      acc += static_cast<__int128>(row[i]) * v[i];
    return acc >= 0;
  }
  mpz_class acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    acc += mpz_class(static_cast<long>(row[i])) * static_cast<long>(v[i]);
  return acc >= 0;
}

bool polyhedral_contains(const IntMat& rows, IntSpan v) {
  for (const IntVec& row : rows)
    if (!row_dot_nonneg(row, v)) return false;
  return true;
}

std::size_t packed_size(int order) {
  return static_cast<std::size_t>(order) * (order + 1) / 2;
}

// Unpacks the upper triangle (row-major) into a full rational matrix.
template <typename Span>
std::vector<RatVec> unpack_symmetric(int order, const Span& packed) {
  std::vector<RatVec> q(order, RatVec(order, Rat(0)));
  std::size_t idx = 0;
  for (int i = 0; i < order; ++i)
    for (int j = i; j < order; ++j) {
      Rat value(packed[idx++]);
      q[i][j] = value;
      q[j][i] = std::move(value);
    }
  return q;
}

// Symmetric Gaussian elimination with rational pivots; destroys q. A negative
// pivot refutes PSD immediately; a zero pivot is admissible only when its
// whole remaining row vanishes.
bool eliminate_psd(std::vector<RatVec>& q) {
  const std::size_t d = q.size();
  for (std::size_t i = 0; i < d; ++i) {
    const int s = sgn(q[i][i]);
    if (s < 0) return false;
    if (s == 0) {
      for (std::size_t j = i + 1; j < d; ++j)
        if (sgn(q[i][j]) != 0) return false;
      continue;
    }
    for (std::size_t r = i + 1; r < d; ++r) {
      if (sgn(q[i][r]) == 0) continue;
      Rat f = q[i][r] / q[i][i];
      for (std::size_t c = r; c < d; ++c) q[r][c] -= f * q[i][c];
    }
  }
  return true;
}

bool psd_contains(int order, IntSpan packed) {
  RatVec entries(packed.size());
  for (std::size_t i = 0; i < packed.size(); ++i) entries[i] = to_rat(packed[i]);
  auto q = unpack_symmetric(order, entries);
  return eliminate_psd(q);
}

int rational_rank(const IntMat& m, int cols) {
  std::vector<RatVec> rows;
  rows.reserve(m.size());
  for (const IntVec& r : m) {
    RatVec row(cols);
    for (int j = 0; j < cols; ++j) row[j] = to_rat(r[j]);
    rows.push_back(std::move(row));
  }
  int rank = 0;
  for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (sgn(rows[r][col]) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (sgn(rows[r][col]) == 0) continue;
      Rat f = rows[r][col] / rows[rank][col];
      for (int j = col; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

bool unit_rows(const IntMat& rows) {
  for (const IntVec& r : rows) {
    int ones = 0;
    for (Int x : r) {
      if (x == 1)
        ++ones;
      else if (x != 0)
        return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

Int floor_rat(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error("floor does not fit in a 64-bit integer");
  return static_cast<Int>(q.get_si());
}

}  // namespace

ConeBlock ConeBlock::orthant(int dim) {
  if (dim < 1) throw ConeError("orthant block needs dim >= 1");
  return ConeBlock{ConeKind::kOrthant, dim, {}, 0};
}

ConeBlock ConeBlock::polyhedral(IntMat m) {
  if (m.empty()) throw ConeError("polyhedral block needs at least one row");
  const int dim = static_cast<int>(m[0].size());
  if (dim < 1) throw ConeError("polyhedral block needs dim >= 1");
  for (const IntVec& row : m)
    if (static_cast<int>(row.size()) != dim)
      throw ConeError("polyhedral block rows have inconsistent lengths");
  if (rational_rank(m, dim) != dim)
    throw ConeError("polyhedral block is not pointed: rank(M) < dim");
  return ConeBlock{ConeKind::kPolyhedral, dim, std::move(m), 0};
}

ConeBlock ConeBlock::second_order(int dim) {
  if (dim < 1) throw ConeError("second-order block needs dim >= 1");
  return ConeBlock{ConeKind::kSecondOrder, dim, {}, 0};
}

ConeBlock ConeBlock::psd(int order) {
  if (order < 1) throw ConeError("psd block needs order >= 1");
  return ConeBlock{ConeKind::kPsd, static_cast<int>(packed_size(order)), {}, order};
}

ConeSpec::ConeSpec(std::vector<ConeBlock> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ConeError("cone needs at least one block");
  for (const ConeBlock& b : blocks_) total_dim_ += b.dim;
}

bool ConeSpec::contains(IntSpan v) const {
  if (static_cast<int>(v.size()) != total_dim_)
    throw DimensionError("cone membership: vector has length " +
                         std::to_string(v.size()) + ", cone has dimension " +
                         std::to_string(total_dim_));
  std::size_t offset = 0;
  for (const ConeBlock& b : blocks_) {
    IntSpan part = v.subspan(offset, b.dim);
    switch (b.kind) {
      case ConeKind::kOrthant:
        if (!orthant_contains(part)) return false;
        break;
      case ConeKind::kPolyhedral:
        if (!polyhedral_contains(b.rows, part)) return false;
        break;
      case ConeKind::kSecondOrder:
        if (!second_order_contains(part)) return false;
        break;
      case ConeKind::kPsd:
        if (!psd_contains(b.order, part)) return false;
        break;
    }
    offset += b.dim;
  }
  return true;
}

bool ConeSpec::leq(IntSpan b1, IntSpan b2) const {
  return contains(vec_sub(b2, b1));
}

bool ConeSpec::dual_contains(const RatVec& u) const {
  if (static_cast<int>(u.size()) != total_dim_)
    throw DimensionError("dual membership: vector has length " +
                         std::to_string(u.size()) + ", cone has dimension " +
                         std::to_string(total_dim_));
  std::size_t offset = 0;
  for (const ConeBlock& b : blocks_) {
    switch (b.kind) {
      case ConeKind::kOrthant: {
        for (int i = 0; i < b.dim; ++i)
          if (sgn(u[offset + i]) < 0) return false;
        break;
      }
      case ConeKind::kSecondOrder: {
        const Rat& t = u[offset + b.dim - 1];
        if (sgn(t) < 0) return false;
        Rat lhs = t * t;
        Rat rhs(0);
        for (int i = 0; i + 1 < b.dim; ++i) rhs += u[offset + i] * u[offset + i];
        if (lhs < rhs) return false;
        break;
      }
      case ConeKind::kPsd: {
        auto q = unpack_symmetric(
            b.order, RatVec(u.begin() + offset, u.begin() + offset + b.dim));
        if (!eliminate_psd(q)) return false;
        break;
      }
      case ConeKind::kPolyhedral: {
        // u is in the dual iff u = M^T lambda for some lambda >= 0.
        const int r = static_cast<int>(b.rows.size());
        std::vector<RatVec> eq(b.dim, RatVec(r));
        for (int i = 0; i < b.dim; ++i)
          for (int j = 0; j < r; ++j) eq[i][j] = to_rat(b.rows[j][i]);
        RatVec rhs(u.begin() + offset, u.begin() + offset + b.dim);
        if (!find_nonnegative_solution(std::move(eq), std::move(rhs)))
          return false;
        break;
      }
    }
    offset += b.dim;
  }
  return true;
}

IntVec ConeSpec::floor_to_integral(const RatVec& b) const {
  if (static_cast<int>(b.size()) != total_dim_)
    throw DimensionError("floor: vector has length " + std::to_string(b.size()) +
                         ", cone has dimension " + std::to_string(total_dim_));
  for (const ConeBlock& blk : blocks_) {
    if (blk.kind == ConeKind::kOrthant) continue;
    if (blk.kind == ConeKind::kPolyhedral && unit_rows(blk.rows)) continue;
    throw UnsupportedConeError(
        "floor_to_integral is defined only for orthant-shaped cones");
  }
  IntVec out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = floor_rat(b[i]);
  return out;
}

}  // namespace cipcert
