#include "xfrag/workload.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "xfrag/error.hpp"

namespace xfrag {

ElementUsageMatrix build_eum(const QueryWorkload& w, const TagSchema& schema) {
  ElementUsageMatrix m;
  m.element_count = schema.size();
  for (const auto& q : w.queries) {
    if (!(q.freq > 0.0)) {
      throw Error(ErrorKind::kInvalidArgument, "query " + q.id + " has non-positive frequency");
    }
    std::vector<std::uint8_t> row(m.element_count, 0);
    for (auto e : q.elements) {
      if (e >= m.element_count) {
        throw Error(ErrorKind::kUnknownElement,
                    "query " + q.id + " uses tag type " + std::to_string(e) + " not in schema");
      }
      row[e] = 1;
    }
    m.query_ids.push_back(q.id);
    m.freq.push_back(q.freq);
    m.use.push_back(std::move(row));
  }
  return m;
}

ElementAffinityMatrix build_eam(const ElementUsageMatrix& m) {
  ElementAffinityMatrix a;
  a.aff.assign(m.element_count, std::vector<double>(m.element_count, 0.0));
  for (std::size_t q = 0; q < m.use.size(); ++q) {
    std::vector<std::size_t> used;
    for (std::size_t e = 0; e < m.element_count; ++e) {
      if (m.use[q][e]) used.push_back(e);
    }
    for (auto i : used) {
      for (auto j : used) a.aff[i][j] += m.freq[q];
    }
  }
  return a;
}

std::vector<ElementGroup> affinity_grouping(const ElementAffinityMatrix& a,
                                            const std::vector<std::uint32_t>& record_children,
                                            std::size_t k) {
  const std::size_t n = record_children.size();
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "record_children is empty");
  if (k == 0 || k > n) {
    throw Error(ErrorKind::kInvalidK, "k = " + std::to_string(k) + " outside [1, " +
                                          std::to_string(n) + "]");
  }
  std::set<std::uint32_t> seen;
  for (auto e : record_children) {
    if (e >= a.size()) {
      throw Error(ErrorKind::kUnknownElement, "tag type " + std::to_string(e) + " not in matrix");
    }
    if (!seen.insert(e).second) {
      throw Error(ErrorKind::kInvalidArgument, "tag type " + std::to_string(e) + " listed twice");
    }
  }

  struct Group {
    std::vector<std::size_t> positions;  // indexes into record_children
    std::uint32_t min_type;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < n; ++i) groups.push_back({{i}, record_children[i]});

  auto cross = [&](const Group& x, const Group& y) {
    double s = 0.0;
    for (auto i : x.positions) {
      for (auto j : y.positions) s += a.at(record_children[i], record_children[j]);
    }
    return s;
  };

  while (groups.size() > k) {
    std::size_t best_x = 0;
    std::size_t best_y = 1;
    // (affinity, -size, -lower min, -higher min): larger is better.
    auto key = [&](std::size_t x, std::size_t y) {
      auto lo = std::min(groups[x].min_type, groups[y].min_type);
      auto hi = std::max(groups[x].min_type, groups[y].min_type);
      return std::make_tuple(cross(groups[x], groups[y]),
                             -static_cast<long long>(groups[x].positions.size() +
                                                     groups[y].positions.size()),
                             -static_cast<long long>(lo), -static_cast<long long>(hi));
    };
    auto best = key(0, 1);
    for (std::size_t x = 0; x < groups.size(); ++x) {
      for (std::size_t y = x + 1; y < groups.size(); ++y) {
        auto cand = key(x, y);
        if (cand > best) {
          best = cand;
          best_x = x;
          best_y = y;
        }
      }
    }
    auto& gx = groups[best_x];
    auto& gy = groups[best_y];
    gx.positions.insert(gx.positions.end(), gy.positions.begin(), gy.positions.end());
    std::sort(gx.positions.begin(), gx.positions.end());
    gx.min_type = std::min(gx.min_type, gy.min_type);
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(best_y));
  }

  std::sort(groups.begin(), groups.end(), [](const Group& x, const Group& y) {
    return x.positions.front() < y.positions.front();
  });
  std::vector<ElementGroup> out;
  for (const auto& g : groups) {
    ElementGroup types;
    for (auto p : g.positions) types.push_back(record_children[p]);
    out.push_back(std::move(types));
  }
  return out;
}

double total_query_cost(const Manifest& manifest, const Allocation& allocation,
                        const QueryWorkload& w, const CostParams& params,
                        const std::map<std::string, std::size_t>& fragment_bytes) {
  if (params.storage_weight < 0 || params.transport_weight < 0) {
    throw Error(ErrorKind::kInvalidArgument, "cost weights must be non-negative");
  }
  for (const auto& e : manifest.fragments) {
    auto it = allocation.placement.find(e.id);
    if (it == allocation.placement.end() || it->second >= allocation.node_count) {
      throw Error(ErrorKind::kAllocationIncomplete, "fragment " + e.id + " is not allocated");
    }
    if (!fragment_bytes.count(e.id)) {
      throw Error(ErrorKind::kIncompleteSet, "no byte size for fragment " + e.id);
    }
  }

  double total = 0.0;
  for (const auto& q : w.queries) {
    std::set<std::uint32_t> wanted(q.elements.begin(), q.elements.end());
    std::map<std::size_t, double> per_node;
    double scanned = 0.0;
    for (const auto& e : manifest.fragments) {
      bool hit = std::any_of(e.element_types.begin(), e.element_types.end(),
                             [&](std::uint32_t t) { return wanted.count(t) > 0; });
      if (!hit) continue;
      double bytes = static_cast<double>(fragment_bytes.at(e.id));
      scanned += bytes;
      per_node[allocation.placement.at(e.id)] += bytes;
    }
    double shipped = 0.0;
    if (per_node.size() > 1) {
      double largest = 0.0;
      for (auto [node, bytes] : per_node) largest = std::max(largest, bytes);
      shipped = scanned - largest;
    }
    total += q.freq * (params.storage_weight * scanned + params.transport_weight * shipped);
  }
  return total;
}

}  // namespace xfrag
