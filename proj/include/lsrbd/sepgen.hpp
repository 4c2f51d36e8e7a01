#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lsrbd/cnf.hpp"
#include "lsrbd/solver.hpp"

namespace lsrbd {

// An assignment alpha in {0,1}^n is packed MSB-first: x_1 is bit n-1, so
// lexicographic order on strings is numeric order.
using Assignment = std::uint32_t;

inline int assignment_bit(Assignment a, unsigned var, unsigned n) {
  return static_cast<int>((a >> (n - 1 - var)) & 1u);
}
std::string assignment_string(Assignment a, unsigned n);

enum class OrderingKind { lex, interleaved, explicit_order };

struct OrderingSpec {
  OrderingKind kind = OrderingKind::lex;
  unsigned n = 0;
  std::vector<Assignment> sequence;  // always materialized, length 2^n
};

const char* to_string(OrderingKind k);
OrderingSpec ordering_lex(unsigned n);
// beta_1, ~beta_1, beta_2, ~beta_2, ... over the first half of lex order.
OrderingSpec ordering_interleaved(unsigned n);
// Throws unless `sequence` is a permutation of {0,1}^n.
OrderingSpec ordering_explicit(unsigned n, std::vector<Assignment> sequence);
OrderingSpec ordering_by_name(const std::string& name, unsigned n);

struct TreeNode {
  std::uint8_t var = 0;           // 0-based x index queried here
  std::uint8_t first_branch = 0;  // value taken in the left subtree
  bool operator==(const TreeNode&) const = default;
};

// Complete depth-n decision tree stored as the preorder list of its 2^n - 1
// internal nodes. Leaves are implicit.
struct DecisionTree {
  unsigned n = 0;
  std::vector<TreeNode> preorder;

  bool valid() const;
  bool operator==(const DecisionTree&) const = default;
};

// Leaf assignments read left to right.
OrderingSpec ordering_from_tree(const DecisionTree& t);

// |{a' : exists a, a' <_o a and a <_ot a'}| via a suffix minimum of
// ot-positions scanned in o-order.
std::size_t d_measure(const OrderingSpec& o, const OrderingSpec& ot);

// Some coordinate is constant on the first half and flipped on the second.
bool key_property_holds(std::span<const Assignment> ordering, unsigned n);

// Number of complete depth-n trees: R(1) = 2, R(n) = 2n R(n-1)^2.
std::uint64_t tree_count(unsigned n);

// Indexes all complete depth-n trees. Index order is lexicographic on the
// preorder labels (root var, root polarity, left subtree, right subtree).
class TreeEnumerator {
 public:
  explicit TreeEnumerator(unsigned n);

  unsigned n() const { return n_; }
  std::uint64_t count() const { return count_; }
  DecisionTree tree_at(std::uint64_t index) const;
  std::vector<Assignment> ordering_at(std::uint64_t index) const;
  // d(o, O(T_index)) computed from precomputed half-orderings by a prefix
  // maximum of o-positions scanned in tree order.
  std::size_t d_at(const std::vector<std::uint32_t>& pos_in_o, std::uint64_t index) const;

  struct Entry {
    std::vector<Assignment> ordering;  // relative to the subtree's free vars
    std::vector<TreeNode> preorder;
  };
  const std::vector<Entry>& subtree_list(unsigned free_mask) const { return lists_[free_mask]; }

  struct Decoded {
    unsigned root_var;
    unsigned polarity;
    std::uint64_t left;
    std::uint64_t right;
  };
  Decoded decode(std::uint64_t index) const;

 private:
  unsigned n_;
  std::uint64_t count_ = 0;
  std::uint64_t sub_count_ = 0;
  std::vector<std::vector<Entry>> lists_;  // by free-var bitmask (bit v = x_{v+1})
};

struct MinDResult {
  std::size_t min_value = 0;
  DecisionTree witness;
  std::uint64_t trees_evaluated = 0;
  std::uint64_t key_property_violations = 0;
};

inline constexpr unsigned kMaxExhaustiveN = 4;

// True minimum over every tree, ties broken toward the lowest tree index.
MinDResult min_d_exhaustive(const OrderingSpec& o);
MinDResult min_d_exhaustive_serial(const OrderingSpec& o);

// Minimum over k seeded random trees (uniform var and polarity per node).
// Only an upper bound on the true minimum.
MinDResult min_d_sampled(const OrderingSpec& o, std::uint64_t k, std::uint64_t seed);
MinDResult min_d_sampled_serial(const OrderingSpec& o, std::uint64_t k, std::uint64_t seed);
DecisionTree sample_tree(unsigned n, std::uint64_t seed, std::uint64_t index);

struct FoInstance {
  Cnf cnf;
  unsigned n = 0;
  OrderingSpec ordering;

  Var x(unsigned i) const { return Var(i); }
  // k is the 0-based position of alpha in the ordering.
  Var q(std::size_t k) const { return Var(static_cast<std::uint32_t>(n + 3 * k)); }
  Var a(std::size_t k) const { return Var(static_cast<std::uint32_t>(n + 3 * k + 1)); }
  Var b(std::size_t k) const { return Var(static_cast<std::uint32_t>(n + 3 * k + 2)); }
  std::vector<Var> x_vars() const;
};

inline constexpr unsigned kMaxFoN = 20;

FoInstance gen_fo(unsigned n, const OrderingSpec& ord);

struct Lemma3Trace {
  std::size_t learnt_units_before_final = 0;
  std::vector<Var> decision_vars;  // every decision made during the drive
  std::size_t skipped_assignments = 0;
};

// Decides each alpha in ordering order on X, learning q_alpha and restarting,
// then finishes with branching restricted to X.
SolveOutcome lemma3_drive(const FoInstance& inst, Lemma3Trace* trace = nullptr);

}  // namespace lsrbd
