#pragma once

// Data-parallel kernels used on the hot paths (record-level scans over large
// documents). Each OpenMP kernel has a serial reference in kernels::serial
// with an identical contract; tests compare the two and the benchmark target
// times them against each other.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "xfrag/annotate.hpp"
#include "xfrag/predicate.hpp"
#include "xfrag/xml.hpp"

namespace xfrag::kernels {

struct SubtreeMeasure {
  std::size_t bytes = 0;
  std::size_t elements = 0;
  std::size_t height = 0;
  std::size_t max_fanout = 0;

  bool operator==(const SubtreeMeasure&) const = default;
};

SubtreeMeasure measure(const ElementNode& node);

// Writes address labels into every root child subtree. `schema` must already
// hold every tag of the subtrees (see annotate()).
void label_records(std::span<ElementNode> records, const TagSchema& schema,
                   std::string_view attr_name);

// 1 where evaluate_predicate(record, p) holds.
std::vector<std::uint8_t> match_records(std::span<const ElementNode> records,
                                        const SimplePredicate& p,
                                        std::string_view structural_attr = {});

// Index of the first predicate each record satisfies (-1 when none), plus a
// flag for records satisfying more than one.
struct Assignment {
  std::vector<int> first_match;
  std::vector<std::uint8_t> overlapping;
};
Assignment assign_records(std::span<const ElementNode> records,
                          std::span<const SimplePredicate> predicates);

std::vector<std::size_t> subtree_bytes(std::span<const ElementNode> nodes);
std::vector<SubtreeMeasure> measure_subtrees(std::span<const ElementNode> nodes);

namespace serial {

void label_records(std::span<ElementNode> records, const TagSchema& schema,
                   std::string_view attr_name);
std::vector<std::uint8_t> match_records(std::span<const ElementNode> records,
                                        const SimplePredicate& p,
                                        std::string_view structural_attr = {});
Assignment assign_records(std::span<const ElementNode> records,
                          std::span<const SimplePredicate> predicates);
std::vector<std::size_t> subtree_bytes(std::span<const ElementNode> nodes);
std::vector<SubtreeMeasure> measure_subtrees(std::span<const ElementNode> nodes);

}  // namespace serial

// Number of OpenMP threads the kernels will use.
int thread_count();

}  // namespace xfrag::kernels
