// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/model.hpp"

#include <json.hpp>

#include <set>
#include <utility>

#include "cipcert/rational.hpp"

namespace cipcert {

using nlohmann::json;

Instance::Instance(std::string name, IntMat a, ConeSpec cone,
                   std::vector<VarSign> var_signs, std::vector<double> objective)
    : name_(std::move(name)),
      a_(std::move(a)),
      cone_(std::move(cone)),
      var_signs_(std::move(var_signs)),
      objective_(std::move(objective)) {
  if (a_.empty() || a_[0].empty())
    throw DimensionError("instance needs at least one row and one column");
  m_ = static_cast<int>(a_.size());
  n_ = static_cast<int>(a_[0].size());
  for (const IntVec& row : a_)
    if (static_cast<int>(row.size()) != n_)
      throw DimensionError("matrix rows have inconsistent lengths");
  if (cone_.total_dim() != m_)
    throw DimensionError("cone dimension " + std::to_string(cone_.total_dim()) +
                         " does not match row count " + std::to_string(m_));
  if (static_cast<int>(var_signs_.size()) != n_)
    throw DimensionError("var_signs length does not match column count");
  if (!objective_.empty() && static_cast<int>(objective_.size()) != n_)
    throw DimensionError("objective length does not match column count");
  columns_.assign(n_, IntVec(m_));
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j) columns_[j][i] = a_[i][j];
}

bool Instance::all_nonnegative() const {
  for (VarSign s : var_signs_)
    if (s != VarSign::kNonnegative) return false;
  return true;
}

IntVec Instance::apply(IntSpan x) const {
  if (static_cast<int>(x.size()) != n_)
    throw DimensionError("apply: solution length does not match column count");
  IntVec out(m_);
  for (int i = 0; i < m_; ++i) {
    __int128 acc = 0;
    for (int j = 0; j < n_; ++j)
      acc += static_cast<__int128>(a_[i][j]) * x[j];
    if (acc > INT64_MAX || acc < INT64_MIN)
      throw Error("integer overflow in A*x");
    out[i] = static_cast<Int>(acc);
  }
  return out;
}

RhsSet RhsSet::box(IntVec lower, IntVec upper, std::size_t cap) {
  if (lower.size() != upper.size())
    throw DimensionError("box bounds have different lengths");
  if (lower.empty()) throw ParseError("box bounds are empty");
  unsigned __int128 count = 1;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i])
      throw ParseError("box lower bound exceeds upper bound in coordinate " +
                       std::to_string(i));
    unsigned __int128 extent =
        static_cast<unsigned __int128>(upper[i] - lower[i]) + 1;
    count *= extent;
    if (count > cap)
      throw ParseError("right-hand side family exceeds the cap of " +
                       std::to_string(cap) + " points");
  }
  RhsSet s;
  s.kind = Kind::kBox;
  s.lower = std::move(lower);
  s.upper = std::move(upper);
  return s;
}

RhsSet RhsSet::list(std::vector<IntVec> points, std::size_t cap) {
  if (points.empty()) throw ParseError("right-hand side list is empty");
  const std::size_t dim = points[0].size();
  if (dim == 0) throw ParseError("right-hand side points are empty");
  std::vector<IntVec> unique;
  std::set<IntVec> seen;
  for (IntVec& p : points) {
    if (p.size() != dim)
      throw DimensionError("right-hand side points have inconsistent lengths");
    if (seen.insert(p).second) unique.push_back(std::move(p));
  }
  if (unique.size() > cap)
    throw ParseError("right-hand side family exceeds the cap of " +
                     std::to_string(cap) + " points");
  RhsSet s;
  s.kind = Kind::kList;
  s.points = std::move(unique);
  return s;
}

std::size_t RhsSet::size() const {
  if (kind == Kind::kList) return points.size();
  unsigned __int128 count = 1;
  for (std::size_t i = 0; i < lower.size(); ++i)
    count *= static_cast<unsigned __int128>(upper[i] - lower[i]) + 1;
  return static_cast<std::size_t>(count);
}

int RhsSet::dim() const {
  return static_cast<int>(kind == Kind::kList ? points[0].size()
                                              : lower.size());
}

std::vector<IntVec> enumerate_rhs(const RhsSet& set) {
  if (set.kind == RhsSet::Kind::kList) return set.points;
  std::vector<IntVec> out;
  out.reserve(set.size());
  IntVec cur = set.lower;
  const std::size_t d = cur.size();
  for (;;) {
    out.push_back(cur);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (cur[i] < set.upper[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < d; ++j) cur[j] = set.lower[j];
        break;
      }
      if (i == 0) return out;
    }
  }
}

namespace {

const json& require_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing required field '") + key + "'");
  return *it;
}

Int require_int(const json& j, const std::string& where) {
  if (j.is_number_float())
    throw IntegralityError(where + ": expected an integer, got " +
                           j.dump());
  if (!j.is_number_integer())
    throw ParseError(where + ": expected an integer, got " + j.dump());
  return j.get<Int>();
}

IntVec require_int_vec(const json& j, const std::string& where) {
  if (!j.is_array())
    throw ParseError(where + ": expected an array");
  IntVec out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(require_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

IntMat require_int_mat(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ParseError(where + ": expected a non-empty array of rows");
  IntMat out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(require_int_vec(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ConeSpec parse_cone(const json& j) {
  const json& blocks = require_field(j, "blocks");
  if (!blocks.is_array() || blocks.empty())
    throw ParseError("cone.blocks: expected a non-empty array");
  std::vector<ConeBlock> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const json& b = blocks[i];
    const std::string where = "cone.blocks[" + std::to_string(i) + "]";
    const json& type = require_field(b, "type");
    if (!type.is_string()) throw ParseError(where + ".type: expected a string");
    const std::string kind = type.get<std::string>();
    if (kind == "orthant") {
      out.push_back(ConeBlock::orthant(
          static_cast<int>(require_int(require_field(b, "dim"), where + ".dim"))));
    } else if (kind == "soc") {
      out.push_back(ConeBlock::second_order(
          static_cast<int>(require_int(require_field(b, "dim"), where + ".dim"))));
    } else if (kind == "psd") {
      out.push_back(ConeBlock::psd(
          static_cast<int>(require_int(require_field(b, "d"), where + ".d"))));
    } else if (kind == "polyhedral") {
      out.push_back(ConeBlock::polyhedral(
          require_int_mat(require_field(b, "M"), where + ".M")));
    } else {
      throw ParseError(where + ".type: unknown cone type '" + kind + "'");
    }
  }
  return ConeSpec(std::move(out));
}

RhsSet parse_rhs(const json& j, int m, std::size_t cap) {
  const json& type = require_field(j, "type");
  if (!type.is_string()) throw ParseError("rhs.type: expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "box") {
    IntVec lower = require_int_vec(require_field(j, "lower"), "rhs.lower");
    IntVec upper = require_int_vec(require_field(j, "upper"), "rhs.upper");
    if (static_cast<int>(lower.size()) != m ||
        static_cast<int>(upper.size()) != m)
      throw DimensionError("rhs bounds must have length m");
    return RhsSet::box(std::move(lower), std::move(upper), cap);
  }
  if (kind == "list") {
    const json& pts = require_field(j, "points");
    if (!pts.is_array() || pts.empty())
      throw ParseError("rhs.points: expected a non-empty array");
    std::vector<IntVec> points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      IntVec p = require_int_vec(pts[i], "rhs.points[" + std::to_string(i) + "]");
      if (static_cast<int>(p.size()) != m)
        throw DimensionError("rhs.points[" + std::to_string(i) +
                             "] must have length m");
      points.push_back(std::move(p));
    }
    return RhsSet::list(std::move(points), cap);
  }
  throw ParseError("rhs.type: unknown kind '" + kind + "'");
}

Rat parse_cert_entry(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return to_rat(j.get<Int>());
  if (j.is_number_float())
    throw ParseError(where + ": write rationals as \"p/q\" strings, not floats");
  throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

SolveOptions parse_options(const json& j, int m) {
  SolveOptions opts;
  if (!j.is_object()) throw ParseError("options: expected an object");
  if (auto it = j.find("engine"); it != j.end()) {
    if (!it->is_string() ||
        (it->get<std::string>() != "f" && it->get<std::string>() != "g"))
      throw ParseError("options.engine: expected \"f\" or \"g\"");
    opts.engine = it->get<std::string>();
  }
  if (auto it = j.find("kbar"); it != j.end()) {
    Int k = require_int(*it, "options.kbar");
    if (k < 0) throw ParseError("options.kbar: must be nonnegative");
    opts.kbar = static_cast<int>(k);
  }
  if (auto it = j.find("dual_cert"); it != j.end()) {
    if (!it->is_array() || static_cast<int>(it->size()) != m)
      throw DimensionError("options.dual_cert: expected an array of length m");
    RatVec u;
    for (std::size_t i = 0; i < it->size(); ++i)
      u.push_back(parse_cert_entry((*it)[i],
                                   "options.dual_cert[" + std::to_string(i) + "]"));
    opts.dual_cert = std::move(u);
  }
  return opts;
}

}  // namespace

ParsedInstance parse_instance(const std::string& text, std::size_t rhs_cap) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance file must be a JSON object");

  std::string name;
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw ParseError("name: expected a string");
    name = it->get<std::string>();
  }
  const Int m = require_int(require_field(j, "m"), "m");
  const Int n = require_int(require_field(j, "n"), "n");
  if (m < 1 || n < 1) throw ParseError("m and n must be positive");

  IntMat a = require_int_mat(require_field(j, "A"), "A");
  if (static_cast<Int>(a.size()) != m)
    throw DimensionError("A has " + std::to_string(a.size()) +
                         " rows, expected m = " + std::to_string(m));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (static_cast<Int>(a[i].size()) != n)
      throw DimensionError("A[" + std::to_string(i) + "] has " +
                           std::to_string(a[i].size()) +
                           " entries, expected n = " + std::to_string(n));

  std::vector<VarSign> signs(static_cast<std::size_t>(n), VarSign::kNonnegative);
  if (auto it = j.find("var_signs"); it != j.end()) {
    if (!it->is_array() || static_cast<Int>(it->size()) != n)
      throw DimensionError("var_signs: expected an array of length n");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const json& s = (*it)[k];
      if (!s.is_string())
        throw ParseError("var_signs[" + std::to_string(k) + "]: expected a string");
      const std::string v = s.get<std::string>();
      if (v == "nonneg")
        signs[k] = VarSign::kNonnegative;
      else if (v == "free")
        signs[k] = VarSign::kFree;
      else
        throw ParseError("var_signs[" + std::to_string(k) +
                         "]: expected \"nonneg\" or \"free\", got \"" + v + "\"");
    }
  }

  std::vector<double> objective;
  if (auto it = j.find("c"); it != j.end()) {
    if (!it->is_array() || static_cast<Int>(it->size()) != n)
      throw DimensionError("c: expected an array of length n");
    for (const json& v : *it) {
      if (!v.is_number()) throw ParseError("c: expected numbers");
      objective.push_back(v.get<double>());
    }
  }

  ConeSpec cone = parse_cone(require_field(j, "cone"));
  Instance inst(std::move(name), std::move(a), std::move(cone),
                std::move(signs), std::move(objective));

  RhsSet rhs = parse_rhs(require_field(j, "rhs"), inst.num_rows(), rhs_cap);

  SolveOptions opts;
  if (auto it = j.find("options"); it != j.end())
    opts = parse_options(*it, inst.num_rows());

  return ParsedInstance{std::move(inst), std::move(rhs), std::move(opts)};
}

Instance split_free_variables(const Instance& inst) {
  if (inst.all_nonnegative()) return inst;
  const int m = inst.num_rows();
  const int n = inst.num_cols();
  IntMat a(m);
  std::vector<double> objective;
  const bool has_obj = !inst.objective().empty();
  for (int i = 0; i < m; ++i) a[i].reserve(n * 2);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) a[i].push_back(inst.matrix()[i][j]);
    if (has_obj) objective.push_back(inst.objective()[j]);
    if (inst.var_signs()[j] == VarSign::kFree) {
      for (int i = 0; i < m; ++i) {
        Int neg;
        if (__builtin_sub_overflow(Int{0}, inst.matrix()[i][j], &neg))
          throw Error("integer overflow while splitting free variables");
        a[i].push_back(neg);
      }
      if (has_obj) objective.push_back(-inst.objective()[j]);
    }
  }
  std::vector<VarSign> signs(a[0].size(), VarSign::kNonnegative);
  return Instance(inst.name(), std::move(a), inst.cone(), std::move(signs),
                  std::move(objective));
}

}  // namespace cipcert
