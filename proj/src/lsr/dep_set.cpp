#include "lsrbd/dep_set.hpp"

#include <algorithm>
#include <iterator>
#include <string>

namespace lsrbd {

DepSet DepSet::from_unsorted(std::vector<Var> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  DepSet d;
  d.vars_ = std::move(vars);
  return d;
}

DepSet DepSet::of_clause(std::span<const Lit> lits) { return from_unsorted(vars_of(lits)); }

void DepSet::merge(const DepSet& other) {
  if (other.vars_.empty()) return;
  if (vars_.empty()) {
    vars_ = other.vars_;
    return;
  }
  std::vector<Var> out;
  out.reserve(vars_.size() + other.vars_.size());
  std::set_union(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(),
                 std::back_inserter(out));
  vars_ = std::move(out);
}

bool DepSet::contains(Var v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

bool DepSet::is_subset_of(const DepSet& other) const { return is_subset_of(other.vars_); }

bool DepSet::is_subset_of(std::span<const Var> sorted_vars) const {
  return std::includes(sorted_vars.begin(), sorted_vars.end(), vars_.begin(), vars_.end());
}

const LearntRecord& LearntStore::add(LearntRecord rec) {
  if (rec.id >= index_.size()) index_.resize(static_cast<std::size_t>(rec.id) + 1, -1);
  index_[rec.id] = static_cast<std::int64_t>(records_.size());
  records_.push_back(std::move(rec));
  return records_.back();
}

const LearntRecord& LearntStore::at(ClauseId id) const {
  if (!is_learnt(id)) throw std::out_of_range("clause " + std::to_string(id) + " is not a learnt clause");
  return records_[static_cast<std::size_t>(index_[id])];
}

DepSet compute_dep_set(std::span<const Lit> learnt_lits, std::span<const ClauseId> conflict_side,
                       std::span<const ClauseId> minimizer_clauses, const LearntStore& records) {
  std::vector<Var> acc = vars_of(learnt_lits);
  for (auto ids : {conflict_side, minimizer_clauses}) {
    for (ClauseId id : ids) {
      const auto& deps = records.at(id).dep_vars.vars();
      acc.insert(acc.end(), deps.begin(), deps.end());
    }
  }
  return DepSet::from_unsorted(std::move(acc));
}

}  // namespace lsrbd
