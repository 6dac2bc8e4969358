#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xfrag/allocation.hpp"
#include "xfrag/annotate.hpp"
#include "xfrag/fragment.hpp"

namespace xfrag {

struct WorkloadQuery {
  std::string id;
  std::vector<std::uint32_t> elements;  // accessed tag types
  double freq = 1.0;                    // per unit time, > 0
};

struct QueryWorkload {
  std::vector<WorkloadQuery> queries;
};

// use[q][e] = 1 iff query q touches tag type e.
struct ElementUsageMatrix {
  std::size_t element_count = 0;
  std::vector<std::string> query_ids;
  std::vector<double> freq;
  std::vector<std::vector<std::uint8_t>> use;
};

// aff[i][j] = sum over queries of freq * use[i] * use[j].
struct ElementAffinityMatrix {
  std::vector<std::vector<double>> aff;

  std::size_t size() const { return aff.size(); }
  double at(std::uint32_t i, std::uint32_t j) const { return aff[i][j]; }
};

struct CostParams {
  double storage_weight = 1.0;    // per byte scanned
  double transport_weight = 1.0;  // per byte shipped between nodes
};

ElementUsageMatrix build_eum(const QueryWorkload& w, const TagSchema& schema);
ElementAffinityMatrix build_eam(const ElementUsageMatrix& m);

using ElementGroup = std::vector<std::uint32_t>;

// Greedy agglomeration of the record's child tag types into k groups: merge
// the pair with the largest cross affinity; ties go to the smaller merged
// group, then to the lower tag types.
std::vector<ElementGroup> affinity_grouping(const ElementAffinityMatrix& a,
                                            const std::vector<std::uint32_t>& record_children,
                                            std::size_t k);

// Sum over queries of freq * (storage_weight * bytes scanned +
// transport_weight * bytes outside the node holding the largest share of the
// query's touched bytes). A query touches every fragment whose element types
// intersect its own.
double total_query_cost(const Manifest& manifest, const Allocation& allocation,
                        const QueryWorkload& w, const CostParams& params,
                        const std::map<std::string, std::size_t>& fragment_bytes);

}  // namespace xfrag
