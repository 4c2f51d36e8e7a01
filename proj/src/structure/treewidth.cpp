#include <algorithm>
#include <set>

#include "lsrbd/structure.hpp"

namespace lsrbd {

std::size_t treewidth_ub(const Vig& g) {
  const std::uint32_t n = g.num_nodes;
  std::vector<std::set<std::uint32_t>> nb(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (const Vig::Edge& e : g.adj[v]) nb[v].insert(e.to);
  }
  std::set<std::pair<std::size_t, std::uint32_t>> queue;
  for (std::uint32_t v = 0; v < n; ++v) queue.emplace(nb[v].size(), v);

  std::size_t width = 0;
  while (!queue.empty()) {
    const std::uint32_t v = queue.begin()->second;
    queue.erase(queue.begin());
    width = std::max(width, nb[v].size());
    const std::vector<std::uint32_t> ns(nb[v].begin(), nb[v].end());
    for (std::uint32_t a : ns) queue.erase({nb[a].size(), a});
    for (std::uint32_t a : ns) {
      nb[a].erase(v);
      for (std::uint32_t b : ns) {
        if (a != b) nb[a].insert(b);
      }
    }
    for (std::uint32_t a : ns) queue.emplace(nb[a].size(), a);
    nb[v].clear();
  }
  return width;
}

std::size_t treewidth_ub(const Cnf& f) { return treewidth_ub(build_vig(f)); }

}  // namespace lsrbd
