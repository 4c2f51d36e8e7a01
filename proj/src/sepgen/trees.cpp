#include <algorithm>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "lsrbd/sepgen.hpp"

namespace lsrbd {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<std::uint32_t> positions(const OrderingSpec& o) {
  std::vector<std::uint32_t> pos(o.sequence.size());
  for (std::size_t i = 0; i < o.sequence.size(); ++i) pos[o.sequence[i]] = static_cast<std::uint32_t>(i);
  return pos;
}

// Out-of-order count for an ordering given as tree order: an element is out
// of order when something before it sits later in o.
struct ScanState {
  std::size_t count = 0;
  std::int64_t max_pos = -1;
  void feed(std::uint32_t p) {
    if (max_pos > static_cast<std::int64_t>(p)) ++count;
    max_pos = std::max<std::int64_t>(max_pos, p);
  }
};

void check_exhaustive(const OrderingSpec& o) {
  if (o.n < 1 || o.n > kMaxExhaustiveN) {
    throw std::invalid_argument("exhaustive tree enumeration supports n <= " + std::to_string(kMaxExhaustiveN));
  }
}

void gen_subtree(unsigned n, unsigned free_mask, std::uint64_t& rng, std::vector<TreeNode>& out) {
  if (free_mask == 0) return;
  unsigned vars[32];
  unsigned k = 0;
  for (unsigned v = 0; v < n; ++v) {
    if ((free_mask >> v) & 1u) vars[k++] = v;
  }
  const std::uint64_t r = splitmix64(rng);
  const unsigned v = vars[r % k];
  const auto b = static_cast<std::uint8_t>((r >> 32) & 1u);
  out.push_back({static_cast<std::uint8_t>(v), b});
  const unsigned sub = free_mask & ~(1u << v);
  gen_subtree(n, sub, rng, out);
  gen_subtree(n, sub, rng, out);
}

}  // namespace

TreeEnumerator::TreeEnumerator(unsigned n) : n_(n) {
  if (n < 1 || n > kMaxExhaustiveN) {
    throw std::invalid_argument("TreeEnumerator supports 1 <= n <= " + std::to_string(kMaxExhaustiveN));
  }
  const unsigned full = (1u << n) - 1;
  lists_.resize(std::size_t{1} << n);
  lists_[0].push_back(Entry{{0}, {}});
  for (unsigned mask = 1; mask < full; ++mask) {
    auto& list = lists_[mask];
    for (unsigned v = 0; v < n; ++v) {
      if (!((mask >> v) & 1u)) continue;
      const auto& sub = lists_[mask & ~(1u << v)];
      const Assignment bit = Assignment{1} << (n - 1 - v);
      for (std::uint8_t b = 0; b < 2; ++b) {
        for (const Entry& l : sub) {
          for (const Entry& r : sub) {
            Entry e;
            e.ordering.reserve(l.ordering.size() * 2);
            for (Assignment a : l.ordering) e.ordering.push_back(b ? a | bit : a);
            for (Assignment a : r.ordering) e.ordering.push_back(b ? a : a | bit);
            e.preorder.reserve(1 + l.preorder.size() * 2);
            e.preorder.push_back({static_cast<std::uint8_t>(v), b});
            e.preorder.insert(e.preorder.end(), l.preorder.begin(), l.preorder.end());
            e.preorder.insert(e.preorder.end(), r.preorder.begin(), r.preorder.end());
            list.push_back(std::move(e));
          }
        }
      }
    }
  }
  sub_count_ = lists_[full & ~1u].size();
  count_ = 2ull * n * sub_count_ * sub_count_;
}

TreeEnumerator::Decoded TreeEnumerator::decode(std::uint64_t index) const {
  if (index >= count_) throw std::out_of_range("tree index out of range");
  Decoded d;
  d.right = index % sub_count_;
  index /= sub_count_;
  d.left = index % sub_count_;
  index /= sub_count_;
  d.polarity = static_cast<unsigned>(index % 2);
  d.root_var = static_cast<unsigned>(index / 2);
  return d;
}

DecisionTree TreeEnumerator::tree_at(std::uint64_t index) const {
  const Decoded d = decode(index);
  const auto& sub = lists_[((1u << n_) - 1) & ~(1u << d.root_var)];
  DecisionTree t{n_, {}};
  t.preorder.push_back({static_cast<std::uint8_t>(d.root_var), static_cast<std::uint8_t>(d.polarity)});
  const auto& l = sub[d.left].preorder;
  const auto& r = sub[d.right].preorder;
  t.preorder.insert(t.preorder.end(), l.begin(), l.end());
  t.preorder.insert(t.preorder.end(), r.begin(), r.end());
  return t;
}

std::vector<Assignment> TreeEnumerator::ordering_at(std::uint64_t index) const {
  const Decoded d = decode(index);
  const auto& sub = lists_[((1u << n_) - 1) & ~(1u << d.root_var)];
  const Assignment bit = Assignment{1} << (n_ - 1 - d.root_var);
  std::vector<Assignment> out;
  out.reserve(std::size_t{1} << n_);
  for (Assignment a : sub[d.left].ordering) out.push_back(d.polarity ? a | bit : a);
  for (Assignment a : sub[d.right].ordering) out.push_back(d.polarity ? a : a | bit);
  return out;
}

std::size_t TreeEnumerator::d_at(const std::vector<std::uint32_t>& pos_in_o, std::uint64_t index) const {
  ScanState st;
  for (Assignment a : ordering_at(index)) st.feed(pos_in_o[a]);
  return st.count;
}

namespace {

struct OuterBest {
  std::size_t value = std::numeric_limits<std::size_t>::max();
  std::uint64_t index = 0;
  std::uint64_t violations = 0;
};

// One (root var, polarity, left subtree) slice: scans every right subtree.
OuterBest scan_slice(const TreeEnumerator& en, const std::vector<std::uint32_t>& pos, unsigned v, unsigned b,
                     std::uint64_t left, const std::vector<Assignment>& right_and,
                     const std::vector<Assignment>& right_or) {
  const unsigned n = en.n();
  const auto& sub = en.subtree_list(((1u << n) - 1) & ~(1u << v));
  const Assignment bit = Assignment{1} << (n - 1 - v);
  const Assignment full = static_cast<Assignment>((1u << n) - 1);
  const std::uint64_t sub_count = sub.size();
  const std::uint64_t base = ((static_cast<std::uint64_t>(v) * 2 + b) * sub_count + left) * sub_count;

  ScanState left_state;
  Assignment and1 = full, or1 = 0;
  for (Assignment a : sub[left].ordering) {
    const Assignment x = b ? a | bit : a;
    left_state.feed(pos[x]);
    and1 &= x;
    or1 |= x;
  }
  OuterBest best;
  for (std::uint64_t j = 0; j < sub_count; ++j) {
    ScanState st = left_state;
    for (Assignment a : sub[j].ordering) st.feed(pos[b ? a : a | bit]);
    if (st.count < best.value) {
      best.value = st.count;
      best.index = base + j;
    }
    if ((((and1 & ~right_or[j]) | (~or1 & right_and[j])) & full) == 0) ++best.violations;
  }
  return best;
}

}  // namespace

MinDResult min_d_exhaustive(const OrderingSpec& o) {
  check_exhaustive(o);
  const TreeEnumerator en(o.n);
  const auto pos = positions(o);
  const unsigned n = o.n;
  const std::uint64_t sub_count = en.subtree_list(((1u << n) - 1) & ~1u).size();
  const auto outer = static_cast<std::int64_t>(2ull * n * sub_count);

  // Right-half masks per (root var, polarity).
  std::vector<std::vector<Assignment>> r_and(2 * n), r_or(2 * n);
  for (unsigned v = 0; v < n; ++v) {
    const auto& sub = en.subtree_list(((1u << n) - 1) & ~(1u << v));
    const Assignment bit = Assignment{1} << (n - 1 - v);
    for (unsigned b = 0; b < 2; ++b) {
      auto& ra = r_and[2 * v + b];
      auto& ro = r_or[2 * v + b];
      for (const auto& e : sub) {
        Assignment x_and = static_cast<Assignment>((1u << n) - 1), x_or = 0;
        for (Assignment a : e.ordering) {
          const Assignment x = b ? a : a | bit;
          x_and &= x;
          x_or |= x;
        }
        ra.push_back(x_and);
        ro.push_back(x_or);
      }
    }
  }

  std::vector<OuterBest> slices(static_cast<std::size_t>(outer));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t t = 0; t < outer; ++t) {
    const auto ut = static_cast<std::uint64_t>(t);
    const std::uint64_t left = ut % sub_count;
    const unsigned vb = static_cast<unsigned>(ut / sub_count);
    slices[static_cast<std::size_t>(t)] = scan_slice(en, pos, vb / 2, vb % 2, left, r_and[vb], r_or[vb]);
  }

  MinDResult res;
  OuterBest best;
  for (const OuterBest& s : slices) {
    if (s.value < best.value) best = s;
    res.key_property_violations += s.violations;
  }
  res.min_value = best.value;
  res.witness = en.tree_at(best.index);
  res.trees_evaluated = en.count();
  return res;
}

MinDResult min_d_exhaustive_serial(const OrderingSpec& o) {
  check_exhaustive(o);
  const TreeEnumerator en(o.n);
  MinDResult res;
  res.min_value = std::numeric_limits<std::size_t>::max();
  std::uint64_t best_index = 0;
  OrderingSpec ot{OrderingKind::explicit_order, o.n, {}};
  for (std::uint64_t i = 0; i < en.count(); ++i) {
    ot.sequence = en.ordering_at(i);
    const std::size_t d = d_measure(o, ot);
    if (d < res.min_value) {
      res.min_value = d;
      best_index = i;
    }
    if (!key_property_holds(ot.sequence, o.n)) ++res.key_property_violations;
  }
  res.witness = en.tree_at(best_index);
  res.trees_evaluated = en.count();
  return res;
}

DecisionTree sample_tree(unsigned n, std::uint64_t seed, std::uint64_t index) {
  if (n < 1 || n > 20) throw std::invalid_argument("sample_tree: n outside [1, 20]");
  std::uint64_t state = seed ^ (index * 0xD1B54A32D192ED03ull);
  splitmix64(state);
  DecisionTree t{n, {}};
  t.preorder.reserve((std::size_t{1} << n) - 1);
  gen_subtree(n, (1u << n) - 1, state, t.preorder);
  return t;
}

namespace {

std::size_t sampled_d(const DecisionTree& t, const std::vector<std::uint32_t>& pos,
                      std::vector<Assignment>& buf) {
  buf.clear();
  std::size_t idx = 0;
  // Walk the preorder exactly as ordering_from_tree does, without validation.
  struct Frame {
    unsigned depth;
    Assignment acc;
    int stage;
    TreeNode node;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0, 0, {}});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.depth == t.n) {
      buf.push_back(f.acc);
      stack.pop_back();
      continue;
    }
    if (f.stage == 0) {
      f.node = t.preorder[idx++];
      f.stage = 1;
      const Assignment bit = Assignment{1} << (t.n - 1 - f.node.var);
      stack.push_back({f.depth + 1, f.node.first_branch ? f.acc | bit : f.acc, 0, {}});
    } else if (f.stage == 1) {
      f.stage = 2;
      const Assignment bit = Assignment{1} << (t.n - 1 - f.node.var);
      stack.push_back({f.depth + 1, f.node.first_branch ? f.acc : f.acc | bit, 0, {}});
    } else {
      stack.pop_back();
    }
  }
  ScanState st;
  for (Assignment a : buf) st.feed(pos[a]);
  return st.count;
}

}  // namespace

MinDResult min_d_sampled(const OrderingSpec& o, std::uint64_t k, std::uint64_t seed) {
  const auto pos = positions(o);
  const int threads = omp_get_max_threads();
  std::vector<OuterBest> local(static_cast<std::size_t>(threads));
#pragma omp parallel
  {
    OuterBest& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
    std::vector<Assignment> buf;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(k); ++i) {
      const auto ui = static_cast<std::uint64_t>(i);
      const std::size_t d = sampled_d(sample_tree(o.n, seed, ui), pos, buf);
      if (d < mine.value || (d == mine.value && ui < mine.index)) {
        mine.value = d;
        mine.index = ui;
      }
    }
  }
  OuterBest best;
  for (const OuterBest& b : local) {
    if (b.value < best.value || (b.value == best.value && b.index < best.index)) best = b;
  }
  MinDResult res;
  res.trees_evaluated = k;
  if (k == 0) return res;
  res.min_value = best.value;
  res.witness = sample_tree(o.n, seed, best.index);
  return res;
}

MinDResult min_d_sampled_serial(const OrderingSpec& o, std::uint64_t k, std::uint64_t seed) {
  MinDResult res;
  res.trees_evaluated = k;
  if (k == 0) return res;
  res.min_value = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t i = 0; i < k; ++i) {
    DecisionTree t = sample_tree(o.n, seed, i);
    const std::size_t d = d_measure(o, ordering_from_tree(t));
    if (d < res.min_value) {
      res.min_value = d;
      res.witness = std::move(t);
    }
  }
  return res;
}

}  // namespace lsrbd
