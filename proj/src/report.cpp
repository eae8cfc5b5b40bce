// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/report.hpp"

#include <algorithm>
#include <functional>

namespace cipcert {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json int_vec_to_json(const IntVec& v) {
  ordered_json a = ordered_json::array();
  for (Int x : v) a.push_back(x);
  return a;
}

const char* verdict_name(int verdict) {
  return verdict == kFeasible ? "feasible" : "infeasible";
}

int verdict_value(const std::string& name) {
  if (name == "feasible") return kFeasible;
  if (name == "infeasible") return kInfeasible;
  throw ParseError("unknown verdict '" + name + "'");
}

IntVec int_vec_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  IntVec out;
  for (const json& v : j) {
    if (!v.is_number_integer())
      throw ParseError(where + ": expected integer entries");
    out.push_back(v.get<Int>());
  }
  return out;
}

}  // namespace

ordered_json run_result_to_json(const RunResult& result) {
  ordered_json j;
  j["instance"] = result.instance_name;
  j["engine"] = result.engine;
  j["kbar"] = result.kbar;
  j["kbar_certified"] = result.kbar_certified;
  j["bound"] = result.bound_note;
  if (result.dual_cert) {
    ordered_json cert = ordered_json::array();
    for (const Rat& r : *result.dual_cert) cert.push_back(rat_to_string(r));
    j["dual_cert"] = std::move(cert);
  }
  if (result.kmax) j["kmax"] = *result.kmax;
  ordered_json records = ordered_json::array();
  for (const RunRecord& r : result.records) {
    ordered_json rec;
    rec["beta"] = int_vec_to_json(r.beta);
    rec["verdict"] = verdict_name(r.verdict);
    if (r.first_feasible_k) rec["first_feasible_k"] = *r.first_feasible_k;
    if (r.witness) rec["witness"] = int_vec_to_json(*r.witness);
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  if (result.pool) {
    ordered_json pool = ordered_json::array();
    for (const IntVec& e : *result.pool) pool.push_back(int_vec_to_json(e));
    j["pool"] = std::move(pool);
  }
  ordered_json trace = ordered_json::array();
  for (const TraceEntry& t : result.trace) {
    ordered_json entry;
    entry["k"] = t.k;
    entry["C"] = t.candidates;
    entry["B"] = t.pool;
    entry["solved"] = t.solved;
    entry["of"] = t.total;
    entry["elapsed_ms"] = t.elapsed_ms;
    trace.push_back(std::move(entry));
  }
  j["trace"] = std::move(trace);
  j["wall_time_ms"] = result.wall_time_ms;
  return j;
}

RunResult run_result_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("result file must be a JSON object");
  RunResult out;
  if (auto it = j.find("instance"); it != j.end() && it->is_string())
    out.instance_name = it->get<std::string>();
  if (auto it = j.find("engine"); it != j.end() && it->is_string())
    out.engine = it->get<std::string>();
  if (auto it = j.find("kbar"); it != j.end() && it->is_number_integer())
    out.kbar = it->get<int>();
  else
    throw ParseError("result is missing an integer 'kbar'");
  if (auto it = j.find("kbar_certified"); it != j.end() && it->is_boolean())
    out.kbar_certified = it->get<bool>();
  if (auto it = j.find("bound"); it != j.end() && it->is_string())
    out.bound_note = it->get<std::string>();
  if (auto it = j.find("dual_cert"); it != j.end()) {
    if (!it->is_array()) throw ParseError("dual_cert: expected an array");
    RatVec u;
    for (const json& v : *it) {
      if (v.is_string())
        u.push_back(parse_rational(v.get<std::string>()));
      else if (v.is_number_integer())
        u.push_back(to_rat(v.get<Int>()));
      else
        throw ParseError("dual_cert: expected integers or \"p/q\" strings");
    }
    out.dual_cert = std::move(u);
  }
  if (auto it = j.find("kmax"); it != j.end() && it->is_number_integer())
    out.kmax = it->get<int>();
  auto rit = j.find("records");
  if (rit == j.end() || !rit->is_array())
    throw ParseError("result is missing a 'records' array");
  for (std::size_t i = 0; i < rit->size(); ++i) {
    const json& rec = (*rit)[i];
    const std::string where = "records[" + std::to_string(i) + "]";
    RunRecord r;
    auto bit = rec.find("beta");
    if (bit == rec.end()) throw ParseError(where + ": missing beta");
    r.beta = int_vec_from_json(*bit, where + ".beta");
    auto vit = rec.find("verdict");
    if (vit == rec.end() || !vit->is_string())
      throw ParseError(where + ": missing verdict");
    r.verdict = verdict_value(vit->get<std::string>());
    if (auto it = rec.find("first_feasible_k");
        it != rec.end() && it->is_number_integer())
      r.first_feasible_k = it->get<int>();
    if (auto it = rec.find("witness"); it != rec.end())
      r.witness = int_vec_from_json(*it, where + ".witness");
    out.records.push_back(std::move(r));
  }
  if (auto it = j.find("pool"); it != j.end()) {
    if (!it->is_array()) throw ParseError("pool: expected an array");
    std::vector<IntVec> pool;
    for (std::size_t i = 0; i < it->size(); ++i)
      pool.push_back(
          int_vec_from_json((*it)[i], "pool[" + std::to_string(i) + "]"));
    out.pool = std::move(pool);
  }
  if (auto it = j.find("wall_time_ms");
      it != j.end() && it->is_number_integer())
    out.wall_time_ms = it->get<long long>();
  return out;
}

namespace {

// Looks for x >= 0 integral with 1^T x <= k and A x = beta exactly.
bool reachable_exactly(const Instance& inst, const IntVec& beta, int k,
                       std::size_t budget) {
  if (simplex_lattice_count(inst.num_cols(), k) > budget)
    throw BudgetError("pool reachability check exceeds the enumeration budget");
  const int n = inst.num_cols();
  IntVec x(n, 0);
  bool found = false;
  std::function<bool(int, Int)> scan = [&](int j, Int remaining) {
    if (j == n) {
      IntVec image = inst.apply(x);
      found = std::equal(image.begin(), image.end(), beta.begin(), beta.end());
      return found;
    }
    for (Int v = 0; v <= remaining; ++v) {
      x[j] = v;
      if (scan(j + 1, remaining - v)) return true;
    }
    x[j] = 0;
    return false;
  };
  scan(0, k);
  return found;
}

}  // namespace

std::vector<std::string> verify_run_result(const Instance& inst,
                                           const RunResult& result,
                                           std::size_t budget) {
  std::vector<std::string> failures;
  const ConeSpec& cone = inst.cone();
  const int m = inst.num_rows();

  if (!result.pool) {
    failures.push_back(
        "result carries no pool; only engine \"f\" results are verifiable");
    return failures;
  }
  if (result.kbar < 0) failures.push_back("kbar is negative");
  const std::vector<IntVec>& pool = *result.pool;

  for (std::size_t i = 0; i < pool.size(); ++i)
    if (static_cast<int>(pool[i].size()) != m) {
      failures.push_back("pool[" + std::to_string(i) +
                         "] has the wrong dimension");
      return failures;
    }
  for (std::size_t i = 0; i < result.records.size(); ++i)
    if (static_cast<int>(result.records[i].beta.size()) != m) {
      failures.push_back("records[" + std::to_string(i) +
                         "].beta has the wrong dimension");
      return failures;
    }

  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j)
      if (i != j && cone.leq(pool[i], pool[j]))
        failures.push_back("pool is not an antichain: " +
                           vec_to_string(pool[i]) + " <= " +
                           vec_to_string(pool[j]));

  for (const IntVec& e : pool)
    if (!reachable_exactly(inst, e, result.kbar, budget))
      failures.push_back("pool element " + vec_to_string(e) +
                         " is not hit exactly by any solution with at most " +
                         std::to_string(result.kbar) + " units");

  MinimalPool as_pool{result.kbar, pool};
  for (const RunRecord& r : result.records) {
    const bool covered = pool_feasible(as_pool, r.beta, cone) == kFeasible;
    if (r.verdict == kFeasible && !covered)
      failures.push_back("record " + vec_to_string(r.beta) +
                         " claims feasible but no pool element covers it");
    if (r.verdict == kInfeasible && covered)
      failures.push_back("record " + vec_to_string(r.beta) +
                         " claims infeasible but the pool covers it");
    if (r.first_feasible_k &&
        (*r.first_feasible_k < 0 || *r.first_feasible_k > result.kbar))
      failures.push_back("record " + vec_to_string(r.beta) +
                         " has first_feasible_k outside [0, kbar]");
    if (r.first_feasible_k && r.verdict != kFeasible)
      failures.push_back("record " + vec_to_string(r.beta) +
                         " is infeasible yet carries first_feasible_k");
    if (r.witness) {
      if (r.verdict != kFeasible) {
        failures.push_back("record " + vec_to_string(r.beta) +
                           " is infeasible yet carries a witness");
        continue;
      }
      const IntVec& x = *r.witness;
      if (static_cast<int>(x.size()) != inst.num_cols()) {
        failures.push_back("witness for " + vec_to_string(r.beta) +
                           " has the wrong length");
        continue;
      }
      Int card = 0;
      bool nonneg = true;
      for (Int v : x) {
        card += v;
        nonneg = nonneg && v >= 0;
      }
      if (!nonneg || card > result.kbar)
        failures.push_back("witness for " + vec_to_string(r.beta) +
                           " is not a solution within the iteration bound");
      else if (!cone.contains(vec_sub(r.beta, inst.apply(x))))
        failures.push_back("witness for " + vec_to_string(r.beta) +
                           " does not satisfy the constraints");
    }
  }

  for (int j = 0; j < inst.num_cols(); ++j) {
    if (result.kbar >= 1) {
      if (pool_feasible(as_pool, inst.column(j), cone) != kFeasible)
        failures.push_back("column " + std::to_string(j) +
                           " is not covered by the pool");
    }
    // At kbar = 0 each column is covered structurally by its unit vector.
  }

  return failures;
}

}  // namespace cipcert
