#pragma once

#include <cstddef>
#include <map>
#include <string>

namespace xfrag {

// Placement of fragments on simulated nodes (0-based).
struct Allocation {
  std::size_t node_count = 1;
  std::map<std::string, std::size_t> placement;

  bool operator==(const Allocation&) const = default;
};

}  // namespace xfrag
