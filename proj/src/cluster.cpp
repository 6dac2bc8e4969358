#include "xfrag/cluster.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "xfrag/annotate.hpp"
#include "xfrag/error.hpp"
#include "xfrag/kernels.hpp"
#include "xfrag/stats.hpp"

namespace xfrag {

AllocationStrategy parse_strategy(std::string_view s) {
  if (s == "round-robin" || s == "roundrobin" || s == "rr") return AllocationStrategy::kRoundRobin;
  if (s == "range") return AllocationStrategy::kRange;
  throw Error(ErrorKind::kInvalidArgument, "unknown allocation strategy \"" + std::string(s) + "\"");
}

std::string_view strategy_name(AllocationStrategy s) {
  return s == AllocationStrategy::kRange ? "range" : "round-robin";
}

Allocation allocate(const Manifest& m, std::size_t node_count, AllocationStrategy strategy) {
  if (node_count == 0) throw Error(ErrorKind::kInvalidArgument, "node count must be positive");
  Allocation a;
  a.node_count = node_count;
  std::size_t ranges = 0;
  for (const auto& e : m.fragments) {
    if (e.range_index) ranges = std::max(ranges, *e.range_index + 1);
  }
  if (strategy == AllocationStrategy::kRange && ranges == 0) {
    throw Error(ErrorKind::kStrategyMismatch, "range allocation needs a range fragmentation");
  }
  for (std::size_t i = 0; i < m.fragments.size(); ++i) {
    const auto& e = m.fragments[i];
    std::size_t node = i % node_count;
    if (strategy == AllocationStrategy::kRange && e.range_index) {
      node = *e.range_index * node_count / ranges;
    }
    a.placement[e.id] = node;
  }
  return a;
}

MemoryFragmentStore::MemoryFragmentStore(const FragmentSet& set) {
  for (const auto& f : set.fragments) items_.insert_or_assign(f.id, f.content);
}

void MemoryFragmentStore::put(std::string id, XmlTree content) {
  items_.insert_or_assign(std::move(id), std::move(content));
}

bool MemoryFragmentStore::erase(std::string_view id) {
  auto it = items_.find(id);
  if (it == items_.end()) return false;
  items_.erase(it);
  return true;
}

bool MemoryFragmentStore::contains(std::string_view id) const { return items_.find(id) != items_.end(); }

const XmlTree& MemoryFragmentStore::get(std::string_view id) const {
  auto it = items_.find(id);
  if (it == items_.end()) {
    throw Error(ErrorKind::kIncompleteSet, "fragment " + std::string(id) + " is not available");
  }
  return it->second;
}

namespace {

// Admissible values of one leaf under a conjunction of comparisons, over a
// dense total order. Empty means no single value satisfies all of them.
template <typename T>
struct Interval {
  std::optional<T> lo;
  bool lo_open = false;
  std::optional<T> hi;
  bool hi_open = false;
  std::vector<T> excluded;

  void lower(const T& v, bool open) {
    if (!lo || *lo < v || (*lo == v && open)) {
      lo = v;
      lo_open = open;
    }
  }
  void upper(const T& v, bool open) {
    if (!hi || v < *hi || (*hi == v && open)) {
      hi = v;
      hi_open = open;
    }
  }
  void add(CompareOp op, const T& v) {
    switch (op) {
      case CompareOp::kEq:
        lower(v, false);
        upper(v, false);
        break;
      case CompareOp::kNe:
        excluded.push_back(v);
        break;
      case CompareOp::kLt:
        upper(v, true);
        break;
      case CompareOp::kLe:
        upper(v, false);
        break;
      case CompareOp::kGt:
        lower(v, true);
        break;
      case CompareOp::kGe:
        lower(v, false);
        break;
    }
  }
  bool empty() const {
    if (lo && hi) {
      if (*hi < *lo) return true;
      if (*lo == *hi) {
        if (lo_open || hi_open) return true;
        return std::find(excluded.begin(), excluded.end(), *lo) != excluded.end();
      }
    }
    return false;
  }
};

template <typename T>
bool jointly_empty(CompareOp a, const T& va, CompareOp b, const T& vb) {
  Interval<T> in;
  in.add(a, va);
  in.add(b, vb);
  return in.empty();
}

// True when no leaf value inside [lo, hi] can satisfy `op c`.
template <typename T>
bool hull_excludes(const T& lo, const T& hi, CompareOp op, const T& c) {
  Interval<T> in;
  in.lower(lo, false);
  in.upper(hi, false);
  in.add(op, c);
  if (op == CompareOp::kNe) return lo == hi && lo == c;
  return in.empty();
}

bool hull_prunes(const KeyHull& hull, const SimplePredicate& q) {
  if (hull.leaves == 0) return true;
  if (hull.mixed) return false;
  if (hull.numeric) {
    auto c = parse_decimal(q.value);
    auto lo = parse_decimal(hull.lo);
    auto hi = parse_decimal(hull.hi);
    if (!c || !lo || !hi) return false;
    return hull_excludes(*lo, *hi, q.op, *c);
  }
  return hull_excludes(hull.lo, hull.hi, q.op, q.value);
}

bool predicate_prunes(const FragmentEntry& e, const SimplePredicate& q) {
  if (!e.predicate || !e.key) return false;
  const KeyHull& hull = *e.key;
  if (hull.mixed || !hull.single_valued) return false;
  SimplePredicate fp = parse_predicate(*e.predicate);
  if (fp.path != q.path) return false;
  if (hull.numeric) {
    auto a = parse_decimal(fp.value);
    auto b = parse_decimal(q.value);
    if (!a || !b) return false;
    return jointly_empty(fp.op, *a, q.op, *b);
  }
  return jointly_empty(fp.op, fp.value, q.op, q.value);
}

bool anchor_prefix(const std::string& anchor, const std::string& query_path) {
  if (anchor.size() > query_path.size()) return false;
  if (query_path.compare(0, anchor.size(), anchor) != 0) return false;
  return anchor.size() == query_path.size() || query_path[anchor.size()] == '/';
}

std::size_t path_depth(const std::string& anchor) {
  return static_cast<std::size_t>(std::count(anchor.begin(), anchor.end(), '/'));
}

void validate_query_path(const SimplePredicate& p, const Manifest& m) {
  if (p.path.size() < 2) throw Error(ErrorKind::kPredicateSyntax, "path must name a record element");
  if (m.schema.size() == 0 || p.path[0] != m.schema.tag_name(0)) {
    throw Error(ErrorKind::kUnknownPath,
                "path " + format_tag_path(p.path) + " does not start at the document root");
  }
  for (const auto& step : p.path) {
    if (!m.schema.find(step)) {
      throw Error(ErrorKind::kUnknownPath,
                  "path " + format_tag_path(p.path) + " names unknown element <" + step + ">");
    }
  }
}

}  // namespace

RoutingResult route_query(const SimplePredicate& p, const Manifest& m, const Allocation& a,
                          const FragmentStore& fragments) {
  validate_query_path(p, m);
  const std::string query_path = format_tag_path(p.path);
  const std::uint32_t leaf_type = *m.schema.find(p.path.back());
  const std::uint32_t record_type = *m.schema.find(p.path[1]);

  RoutingResult r;
  std::set<std::size_t> nodes;
  std::set<std::uint32_t> matched;
  for (const auto& e : m.fragments) {
    if (!anchor_prefix(e.anchor, query_path)) continue;
    if (!std::binary_search(e.element_types.begin(), e.element_types.end(), leaf_type)) continue;
    if (e.key && e.key->path == query_path && hull_prunes(*e.key, p)) continue;
    if (predicate_prunes(e, p)) continue;

    auto placed = a.placement.find(e.id);
    if (placed == a.placement.end()) {
      throw Error(ErrorKind::kAllocationIncomplete, "fragment " + e.id + " is not allocated");
    }
    const XmlTree& content = fragments.get(e.id);
    const auto& root = content.root;
    auto record_of = [&](const ElementNode& n) {
      matched.insert(label_of(n, m.attr_name).leading_ordinal());
    };
    switch (e.role) {
      case FragmentRole::kRecords:
      case FragmentRole::kSkeleton: {
        auto hits = kernels::match_records(root.children, p, m.ref_attr);
        for (std::size_t i = 0; i < hits.size(); ++i) {
          if (hits[i]) record_of(root.children[i]);
        }
        break;
      }
      case FragmentRole::kProjected: {
        const std::size_t start = path_depth(e.anchor) - 1;
        for (const auto& child : root.children) {
          if (evaluate_from(child, p, start, m.ref_attr)) record_of(child);
        }
        break;
      }
      case FragmentRole::kSubtree:
        if (evaluate_from(root, p, path_depth(e.anchor) - 1, m.ref_attr)) record_of(root);
        break;
    }
    nodes.insert(placed->second);
    r.scanned += e.record_count;
    r.scanned_per_node[placed->second] += e.record_count;
    r.scanned_fragments.push_back(e.id);
  }
  r.nodes.assign(nodes.begin(), nodes.end());
  for (auto ord : matched) r.matches.push_back(Address{{ord}, record_type});
  return r;
}

double skew_metric(std::span<const RoutingResult> results, const Allocation& a) {
  std::vector<double> loads(a.node_count, 0.0);
  for (const auto& r : results) {
    for (auto [node, n] : r.scanned_per_node) {
      if (node >= loads.size()) {
        throw Error(ErrorKind::kInvalidArgument, "node " + std::to_string(node) + " out of range");
      }
      loads[node] += static_cast<double>(n);
    }
  }
  return coefficient_of_variation(loads);
}

namespace {

struct Reassembler {
  const Manifest& m;
  // label -> (fragment id, subtree); the subtree is moved out once used.
  std::map<std::string, std::pair<std::string, std::optional<ElementNode>>> index;

  void sort_children(ElementNode& n) const {
    std::stable_sort(n.children.begin(), n.children.end(),
                     [&](const ElementNode& x, const ElementNode& y) {
                       auto ax = try_label_of(x, m.attr_name);
                       auto ay = try_label_of(y, m.attr_name);
                       if (!ax || !ay) return false;
                       return ax->last_ordinal() < ay->last_ordinal();
                     });
  }

  void resolve(ElementNode& n) {
    if (const std::string* ref = n.attribute(m.ref_attr)) {
      std::istringstream tokens(*ref);
      std::string token;
      std::vector<std::string> wanted;
      while (tokens >> token) wanted.push_back(token);
      n.remove_attribute(m.ref_attr);
      for (const auto& t : wanted) {
        auto it = index.find(t);
        if (it == index.end()) {
          throw Error(ErrorKind::kLinkResolution, "reference " + t + " has no fragment subtree");
        }
        if (!it->second.second) {
          throw Error(ErrorKind::kLinkResolution, "subtree " + t + " referenced twice");
        }
        n.children.push_back(std::move(*it->second.second));
        it->second.second.reset();
      }
    }
    for (auto& c : n.children) resolve(c);
    sort_children(n);
  }
};

}  // namespace

XmlTree reassemble(const Manifest& m, const FragmentStore& fragments) {
  std::vector<std::string> missing;
  for (const auto& e : m.fragments) {
    if (!fragments.contains(e.id)) missing.push_back(e.id);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw Error(ErrorKind::kIncompleteSet, "missing fragments: " + list);
  }

  std::optional<ElementNode> root;
  const bool has_cuts = std::any_of(m.fragments.begin(), m.fragments.end(), [](const auto& e) {
    return e.role == FragmentRole::kProjected || e.role == FragmentRole::kSubtree;
  });
  Reassembler ra{m, {}};
  for (const auto& e : m.fragments) {
    const auto& content = fragments.get(e.id).root;
    switch (e.role) {
      case FragmentRole::kRecords:
      case FragmentRole::kSkeleton:
        if (!root) {
          root.emplace(content.tag);
          root->attributes = content.attributes;
          root->text = content.text;
        } else if (content.tag != root->tag) {
          throw Error(ErrorKind::kLinkResolution,
                      "fragment " + e.id + " has root <" + content.tag + ">, expected <" +
                          root->tag + ">");
        } else if (const std::string* refs = content.attribute(m.ref_attr); refs && has_cuts) {
          const std::string* merged = root->attribute(m.ref_attr);
          root->set_attribute(m.ref_attr, merged ? *merged + " " + *refs : *refs);
        }
        root->children.insert(root->children.end(), content.children.begin(),
                              content.children.end());
        break;
      case FragmentRole::kProjected:
      case FragmentRole::kSubtree: {
        auto add = [&](const ElementNode& n) {
          std::string key = format_address(label_of(n, m.attr_name));
          if (!ra.index.emplace(key, std::make_pair(e.id, std::optional<ElementNode>(n))).second) {
            throw Error(ErrorKind::kLinkResolution, "subtree " + key + " appears twice");
          }
        };
        if (e.role == FragmentRole::kSubtree) {
          add(content);
        } else {
          for (const auto& c : content.children) add(c);
        }
        break;
      }
    }
  }
  if (!root) throw Error(ErrorKind::kIncompleteSet, "no record-bearing fragment in manifest");

  for (const auto& link : m.links) {
    auto it = ra.index.find(link.ref_value);
    if (it == ra.index.end() || it->second.first != link.fragment_id) {
      throw Error(ErrorKind::kLinkResolution,
                  "link " + link.ref_value + " does not resolve in fragment " + link.fragment_id);
    }
  }

  if (has_cuts) {
    ra.resolve(*root);
    for (const auto& [key, item] : ra.index) {
      if (item.second) {
        throw Error(ErrorKind::kLinkResolution,
                    "subtree " + key + " in fragment " + item.first + " is never referenced");
      }
    }
  } else {
    ra.sort_children(*root);
  }
  return XmlTree{std::move(*root), m.origin};
}

}  // namespace xfrag
