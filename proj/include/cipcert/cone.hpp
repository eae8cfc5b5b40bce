// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <vector>

#include "cipcert/rational.hpp"
#include "cipcert/types.hpp"

namespace cipcert {

enum class ConeKind { kOrthant, kPolyhedral, kSecondOrder, kPsd };

// One factor of a product cone. Use the factory functions; they validate the
// block, in particular pointedness of polyhedral blocks (rank(M) = dim).
//
// Block coordinate conventions:
//  - kSecondOrder: the last coordinate is the radius, v in K iff
//    v[dim-1] >= 0 and v[dim-1]^2 >= sum of squares of the rest.
//  - kPsd: a symmetric d x d matrix packed as its upper triangle in row-major
//    order (raw entries, no scaling), dim = d*(d+1)/2.
struct ConeBlock {
  ConeKind kind;
  int dim = 0;    // ambient dimension of the block
  IntMat rows;    // polyhedral only: K = {x : M x >= 0}
  int order = 0;  // PSD only: matrix side d

  static ConeBlock orthant(int dim);
  static ConeBlock polyhedral(IntMat m);
  static ConeBlock second_order(int dim);
  static ConeBlock psd(int order);
};

// Product cone K = K_1 x ... x K_r, with b1 <=_K b2 iff b2 - b1 in K.
// All membership tests are exact.
class ConeSpec {
 public:
  explicit ConeSpec(std::vector<ConeBlock> blocks);

  int total_dim() const { return total_dim_; }
  const std::vector<ConeBlock>& blocks() const { return blocks_; }

  bool contains(IntSpan v) const;
  bool leq(IntSpan b1, IntSpan b2) const;

  // Membership of a rational vector in the dual cone K*. Orthant, second
  // order and PSD blocks are self dual; polyhedral duals are decided by an
  // exact feasibility LP over {M^T lambda : lambda >= 0}.
  bool dual_contains(const RatVec& u) const;

  // Largest integral b' <= b in the cone order. Defined only when every
  // block is an orthant or an orthant written as a polyhedral block with
  // unit rows; other cones throw UnsupportedConeError.
  IntVec floor_to_integral(const RatVec& b) const;

 private:
  std::vector<ConeBlock> blocks_;
  int total_dim_ = 0;
};

}  // namespace cipcert
