#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xfrag/address.hpp"
#include "xfrag/allocation.hpp"
#include "xfrag/fragment.hpp"
#include "xfrag/predicate.hpp"

namespace xfrag {

enum class AllocationStrategy { kRoundRobin, kRange };

AllocationStrategy parse_strategy(std::string_view s);
std::string_view strategy_name(AllocationStrategy s);

// Round-robin: fragment i -> node i mod node_count in manifest order.
// Range: range split j -> node j (contiguous blocks when ranges outnumber
// nodes); fragments outside the range split follow round-robin.
Allocation allocate(const Manifest& m, std::size_t node_count, AllocationStrategy strategy);

// Read access to fragment contents by id. Implementations must allow
// concurrent get() calls.
class FragmentStore {
 public:
  virtual ~FragmentStore() = default;
  virtual bool contains(std::string_view id) const = 0;
  // Throws kIncompleteSet when the id is unknown.
  virtual const XmlTree& get(std::string_view id) const = 0;
};

class MemoryFragmentStore : public FragmentStore {
 public:
  MemoryFragmentStore() = default;
  explicit MemoryFragmentStore(const FragmentSet& set);

  void put(std::string id, XmlTree content);
  bool erase(std::string_view id);

  bool contains(std::string_view id) const override;
  const XmlTree& get(std::string_view id) const override;

 private:
  std::map<std::string, XmlTree, std::less<>> items_;
};

struct RoutingResult {
  std::vector<std::size_t> nodes;  // touched, ascending
  std::vector<Address> matches;    // matching record labels, document order
  std::size_t scanned = 0;         // records held by the scanned fragments
  std::map<std::size_t, std::size_t> scanned_per_node;
  std::vector<std::string> scanned_fragments;
};

// Prunes fragments that provably hold no match (path shape, element types,
// value hulls, horizontal predicates), then scans the rest. Pruning is
// conservative: anything undecidable is scanned.
RoutingResult route_query(const SimplePredicate& p, const Manifest& m, const Allocation& a,
                          const FragmentStore& fragments);

// Coefficient of variation of per-node scanned-record loads.
double skew_metric(std::span<const RoutingResult> results, const Allocation& a);

// Inverse of every fragmentation operator: merges record-bearing fragments
// by label order and re-attaches referenced subtrees. The result still
// carries labels.
XmlTree reassemble(const Manifest& m, const FragmentStore& fragments);

}  // namespace xfrag
