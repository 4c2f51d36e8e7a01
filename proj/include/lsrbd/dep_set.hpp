#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "lsrbd/cnf.hpp"

namespace lsrbd {

using ClauseId = std::uint32_t;
inline constexpr ClauseId kNoClause = std::numeric_limits<ClauseId>::max();

// Sorted, duplicate-free set of variables.
class DepSet {
 public:
  DepSet() = default;
  static DepSet from_unsorted(std::vector<Var> vars);
  static DepSet of_clause(std::span<const Lit> lits);

  void merge(const DepSet& other);
  bool contains(Var v) const;
  bool is_subset_of(const DepSet& other) const;
  bool is_subset_of(std::span<const Var> sorted_vars) const;

  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  const std::vector<Var>& vars() const { return vars_; }
  auto begin() const { return vars_.begin(); }
  auto end() const { return vars_.end(); }

  bool operator==(const DepSet&) const = default;

 private:
  std::vector<Var> vars_;
};

// A learnt clause together with its dependency variables D_C*.
struct LearntRecord {
  ClauseId id = kNoClause;
  Clause literals;
  DepSet dep_vars;
  std::uint64_t birth_conflict = 0;
  std::uint32_t lbd = 0;
};

// Every learnt clause ever committed, in creation order. Deleting a clause
// from the solver database leaves its record here.
class LearntStore {
 public:
  const LearntRecord& add(LearntRecord rec);

  bool is_learnt(ClauseId id) const {
    return id < index_.size() && index_[id] >= 0;
  }
  // Throws std::out_of_range for ids that are not learnt clauses.
  const LearntRecord& at(ClauseId id) const;

  const std::vector<LearntRecord>& all() const { return records_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<LearntRecord> records_;
  std::vector<std::int64_t> index_;
};

// vars(learnt) ∪ D(conflict_side) ∪ D(minimizer). Both id sets must name
// learnt clauses; original clauses carry an empty dependency set and are
// filtered out by the caller.
DepSet compute_dep_set(std::span<const Lit> learnt_lits, std::span<const ClauseId> conflict_side,
                       std::span<const ClauseId> minimizer_clauses, const LearntStore& records);

}  // namespace lsrbd
