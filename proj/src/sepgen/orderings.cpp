#include <algorithm>
#include <limits>
#include <stdexcept>

#include "lsrbd/sepgen.hpp"

namespace lsrbd {

namespace {

void check_n(unsigned n, unsigned max_n) {
  if (n < 1 || n > max_n) {
    throw std::invalid_argument("n = " + std::to_string(n) + " outside [1, " + std::to_string(max_n) + "]");
  }
}

void fill_ordering(const std::vector<TreeNode>& pre, std::size_t& idx, unsigned depth, unsigned n,
                   Assignment acc, std::vector<Assignment>& out) {
  if (depth == n) {
    out.push_back(acc);
    return;
  }
  const TreeNode node = pre[idx++];
  const Assignment bit = Assignment{1} << (n - 1 - node.var);
  fill_ordering(pre, idx, depth + 1, n, node.first_branch ? acc | bit : acc, out);
  fill_ordering(pre, idx, depth + 1, n, node.first_branch ? acc : acc | bit, out);
}

bool valid_subtree(const std::vector<TreeNode>& pre, std::size_t& idx, unsigned depth, unsigned n,
                   unsigned used_mask) {
  if (depth == n) return true;
  if (idx >= pre.size()) return false;
  const TreeNode node = pre[idx++];
  if (node.var >= n || node.first_branch > 1 || (used_mask >> node.var) & 1u) return false;
  const unsigned used = used_mask | (1u << node.var);
  return valid_subtree(pre, idx, depth + 1, n, used) && valid_subtree(pre, idx, depth + 1, n, used);
}

}  // namespace

std::string assignment_string(Assignment a, unsigned n) {
  std::string s(n, '0');
  for (unsigned i = 0; i < n; ++i) s[i] = assignment_bit(a, i, n) ? '1' : '0';
  return s;
}

const char* to_string(OrderingKind k) {
  switch (k) {
    case OrderingKind::lex: return "lex";
    case OrderingKind::interleaved: return "interleaved";
    case OrderingKind::explicit_order: return "explicit";
  }
  return "?";
}

OrderingSpec ordering_lex(unsigned n) {
  check_n(n, kMaxFoN);
  OrderingSpec o{OrderingKind::lex, n, {}};
  o.sequence.resize(std::size_t{1} << n);
  for (std::size_t i = 0; i < o.sequence.size(); ++i) o.sequence[i] = static_cast<Assignment>(i);
  return o;
}

OrderingSpec ordering_interleaved(unsigned n) {
  check_n(n, kMaxFoN);
  OrderingSpec o{OrderingKind::interleaved, n, {}};
  const Assignment full = static_cast<Assignment>((std::size_t{1} << n) - 1);
  const std::size_t half = std::size_t{1} << (n - 1);
  o.sequence.reserve(2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    o.sequence.push_back(static_cast<Assignment>(i));
    o.sequence.push_back(static_cast<Assignment>(i) ^ full);
  }
  return o;
}

OrderingSpec ordering_explicit(unsigned n, std::vector<Assignment> sequence) {
  check_n(n, kMaxFoN);
  const std::size_t count = std::size_t{1} << n;
  if (sequence.size() != count) throw std::invalid_argument("explicit ordering has wrong length");
  std::vector<bool> hit(count, false);
  for (Assignment a : sequence) {
    if (a >= count || hit[a]) throw std::invalid_argument("explicit ordering is not a permutation");
    hit[a] = true;
  }
  return OrderingSpec{OrderingKind::explicit_order, n, std::move(sequence)};
}

OrderingSpec ordering_by_name(const std::string& name, unsigned n) {
  if (name == "lex") return ordering_lex(n);
  if (name == "interleaved") return ordering_interleaved(n);
  throw std::invalid_argument("unknown ordering '" + name + "' (lex | interleaved)");
}

bool DecisionTree::valid() const {
  if (n < 1 || n > 31 || preorder.size() != (std::size_t{1} << n) - 1) return false;
  std::size_t idx = 0;
  return valid_subtree(preorder, idx, 0, n, 0) && idx == preorder.size();
}

OrderingSpec ordering_from_tree(const DecisionTree& t) {
  if (!t.valid()) throw std::invalid_argument("malformed decision tree");
  OrderingSpec o{OrderingKind::explicit_order, t.n, {}};
  o.sequence.reserve(std::size_t{1} << t.n);
  std::size_t idx = 0;
  fill_ordering(t.preorder, idx, 0, t.n, 0, o.sequence);
  return o;
}

std::size_t d_measure(const OrderingSpec& o, const OrderingSpec& ot) {
  if (o.n != ot.n || o.sequence.size() != ot.sequence.size()) {
    throw std::invalid_argument("d_measure: orderings over different n");
  }
  std::vector<std::uint32_t> pos_ot(o.sequence.size());
  for (std::size_t i = 0; i < ot.sequence.size(); ++i) pos_ot[ot.sequence[i]] = static_cast<std::uint32_t>(i);
  std::size_t count = 0;
  std::uint32_t suffix_min = std::numeric_limits<std::uint32_t>::max();
  for (std::size_t i = o.sequence.size(); i-- > 0;) {
    const std::uint32_t p = pos_ot[o.sequence[i]];
    if (p > suffix_min) ++count;
    suffix_min = std::min(suffix_min, p);
  }
  return count;
}

bool key_property_holds(std::span<const Assignment> ordering, unsigned n) {
  const Assignment full = static_cast<Assignment>((std::size_t{1} << n) - 1);
  const std::size_t half = ordering.size() / 2;
  Assignment and1 = full, or1 = 0, and2 = full, or2 = 0;
  for (std::size_t i = 0; i < half; ++i) {
    and1 &= ordering[i];
    or1 |= ordering[i];
  }
  for (std::size_t i = half; i < ordering.size(); ++i) {
    and2 &= ordering[i];
    or2 |= ordering[i];
  }
  return ((and1 & ~or2) | (~or1 & and2)) & full;
}

std::uint64_t tree_count(unsigned n) {
  if (n == 0) return 1;
  const std::uint64_t sub = tree_count(n - 1);
  return 2ull * n * sub * sub;
}

}  // namespace lsrbd
