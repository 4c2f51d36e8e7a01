#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

#include "lsrbd/structure.hpp"

namespace lsrbd {

double Vig::weight(std::uint32_t a, std::uint32_t b) const {
  const auto& row = adj.at(a);
  auto it = std::lower_bound(row.begin(), row.end(), b, [](const Edge& e, std::uint32_t v) { return e.to < v; });
  return it != row.end() && it->to == b ? it->weight : 0.0;
}

double Vig::degree(std::uint32_t v) const {
  double d = 0.0;
  for (const Edge& e : adj.at(v)) d += e.weight;
  return d;
}

std::size_t Vig::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : adj) n += row.size();
  return n / 2;
}

Vig build_vig(const Cnf& f) {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> pairs;
  for (const Clause& c : f.clauses) {
    if (c.size() < 2) continue;
    const double w = 1.0 / static_cast<double>(c.size() - 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        std::uint32_t a = c[i].var().index(), b = c[j].var().index();
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        pairs.emplace_back(a, b, w);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  Vig g;
  g.num_nodes = f.num_vars;
  g.adj.resize(f.num_vars);
  for (std::size_t i = 0; i < pairs.size();) {
    const auto [a, b, w0] = pairs[i];
    double w = 0.0;
    for (; i < pairs.size() && std::get<0>(pairs[i]) == a && std::get<1>(pairs[i]) == b; ++i) w += std::get<2>(pairs[i]);
    g.adj[a].push_back({b, w});
    g.adj[b].push_back({a, w});
    g.total_weight += w;
  }
  for (auto& row : g.adj) {
    std::sort(row.begin(), row.end(), [](const Vig::Edge& x, const Vig::Edge& y) { return x.to < y.to; });
  }
  return g;
}

double modularity(const Vig& g, const Partition& p) {
  if (p.community.size() != g.num_nodes) throw std::invalid_argument("partition does not cover the graph");
  const double m = g.total_weight;
  if (m == 0.0) return 0.0;
  std::vector<double> w_in(p.count, 0.0), deg(p.count, 0.0);
  for (std::uint32_t v = 0; v < g.num_nodes; ++v) {
    const std::uint32_t c = p.community[v];
    if (c >= p.count) throw std::invalid_argument("community id out of range");
    for (const Vig::Edge& e : g.adj[v]) {
      deg[c] += e.weight;
      if (e.to > v && p.community[e.to] == c) w_in[c] += e.weight;
    }
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < p.count; ++c) {
    const double d = deg[c] / (2.0 * m);
    q += w_in[c] / m - d * d;
  }
  return q;
}

namespace {

// Graph being clustered in one Louvain level; aggregated nodes keep their
// internal weight as a self loop.
struct LevelGraph {
  std::vector<std::vector<Vig::Edge>> adj;
  std::vector<double> self;
  std::vector<double> k;
};

// Returns true if any node moved. `comm` is dense on return.
bool local_moves(const LevelGraph& lg, double m, std::mt19937_64& rng, std::vector<std::uint32_t>& comm) {
  const std::size_t n = lg.adj.size();
  const double m2 = 2.0 * m;
  comm.resize(n);
  std::iota(comm.begin(), comm.end(), 0u);
  std::vector<double> tot(lg.k);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> neigh(n, 0.0);
  std::vector<std::uint32_t> touched;
  bool any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t ci = comm[i];
      touched.clear();
      for (const Vig::Edge& e : lg.adj[i]) {
        const std::uint32_t c = comm[e.to];
        if (neigh[c] == 0.0) touched.push_back(c);
        neigh[c] += e.weight;
      }
      tot[ci] -= lg.k[i];
      const double ki = lg.k[i];
      const double stay = neigh[ci] - tot[ci] * ki / m2;
      std::uint32_t best = ci;
      double best_gain = stay;
      for (std::uint32_t c : touched) {
        const double gain = neigh[c] - tot[c] * ki / m2;
        if ((gain - stay) / m <= kLouvainEpsilon) continue;
        if (gain > best_gain || (gain == best_gain && best != ci && c < best)) {
          best = c;
          best_gain = gain;
        }
      }
      tot[best] += ki;
      for (std::uint32_t c : touched) neigh[c] = 0.0;
      if (best != ci) {
        comm[i] = best;
        moved = true;
        any = true;
      }
    }
  }
  std::vector<std::int64_t> remap(n, -1);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (remap[comm[i]] < 0) remap[comm[i]] = next++;
    comm[i] = static_cast<std::uint32_t>(remap[comm[i]]);
  }
  return any;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm) {
  const std::uint32_t count = comm.empty() ? 0 : *std::max_element(comm.begin(), comm.end()) + 1;
  LevelGraph out;
  out.adj.resize(count);
  out.self.assign(count, 0.0);
  out.k.assign(count, 0.0);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> acc(count);
  for (std::size_t i = 0; i < lg.adj.size(); ++i) {
    const std::uint32_t ci = comm[i];
    out.self[ci] += lg.self[i];
    out.k[ci] += lg.k[i];
    for (const Vig::Edge& e : lg.adj[i]) {
      const std::uint32_t cj = comm[e.to];
      if (cj == ci) {
        if (e.to > i) out.self[ci] += e.weight;
      } else {
        acc[ci].emplace_back(cj, e.weight);
      }
    }
  }
  for (std::uint32_t c = 0; c < count; ++c) {
    auto& a = acc[c];
    std::sort(a.begin(), a.end());
    for (std::size_t i = 0; i < a.size();) {
      const std::uint32_t to = a[i].first;
      double w = 0.0;
      for (; i < a.size() && a[i].first == to; ++i) w += a[i].second;
      out.adj[c].push_back({to, w});
    }
  }
  return out;
}

}  // namespace

LouvainResult louvain(const Vig& g, std::uint64_t seed) {
  if (g.num_nodes == 0) throw std::invalid_argument("louvain needs a non-empty graph");
  LouvainResult res;
  std::vector<std::uint32_t> node_comm(g.num_nodes);
  std::iota(node_comm.begin(), node_comm.end(), 0u);
  auto current = [&]() {
    Partition p;
    p.community = node_comm;
    p.count = *std::max_element(node_comm.begin(), node_comm.end()) + 1;
    return p;
  };
  if (g.total_weight == 0.0) {
    res.partition = current();
    res.q = 0.0;
    return res;
  }

  LevelGraph lg;
  lg.adj = g.adj;
  lg.self.assign(g.num_nodes, 0.0);
  lg.k.resize(g.num_nodes);
  for (std::uint32_t v = 0; v < g.num_nodes; ++v) lg.k[v] = g.degree(v);

  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> comm;
  res.q_per_round.push_back(modularity(g, current()));
  while (local_moves(lg, g.total_weight, rng, comm)) {
    for (std::uint32_t& c : node_comm) c = comm[c];
    res.q_per_round.push_back(modularity(g, current()));
    lg = aggregate(lg, comm);
  }

  // Dense ids in order of first appearance.
  std::vector<std::int64_t> remap(g.num_nodes, -1);
  std::uint32_t next = 0;
  for (std::uint32_t& c : node_comm) {
    if (remap[c] < 0) remap[c] = next++;
    c = static_cast<std::uint32_t>(remap[c]);
  }
  res.partition.community = node_comm;
  res.partition.count = next;
  res.q = modularity(g, res.partition);
  return res;
}

}  // namespace lsrbd
