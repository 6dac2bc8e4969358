#include "xfrag/kernels.hpp"

#include <omp.h>

#include <algorithm>

namespace xfrag::kernels {

namespace {

// Below this many records the fork/join overhead dominates.
constexpr std::ptrdiff_t kParallelCutoff = 512;

void label_subtree(ElementNode& node, std::vector<std::uint32_t>& ordinals,
                   const TagSchema& schema, std::string_view attr_name) {
  Address a{ordinals, schema.tag_type(node.tag)};
  node.set_attribute(attr_name, format_address(a));
  ordinals.push_back(0);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    ordinals.back() = static_cast<std::uint32_t>(i + 1);
    label_subtree(node.children[i], ordinals, schema, attr_name);
  }
  ordinals.pop_back();
}

int first_match(const ElementNode& record, std::span<const SimplePredicate> predicates,
                bool& overlapping) {
  int first = -1;
  overlapping = false;
  for (std::size_t j = 0; j < predicates.size(); ++j) {
    if (!evaluate_predicate(record, predicates[j])) continue;
    if (first < 0) {
      first = static_cast<int>(j);
    } else {
      overlapping = true;
      break;
    }
  }
  return first;
}

}  // namespace

SubtreeMeasure measure(const ElementNode& node) {
  SubtreeMeasure m;
  m.bytes = element_shell_bytes(node);
  m.elements = 1;
  m.max_fanout = node.children.size();
  std::size_t child_height = 0;
  for (const auto& child : node.children) {
    auto c = measure(child);
    m.bytes += c.bytes;
    m.elements += c.elements;
    m.max_fanout = std::max(m.max_fanout, c.max_fanout);
    child_height = std::max(child_height, c.height);
  }
  m.height = child_height + 1;
  return m;
}

int thread_count() { return omp_get_max_threads(); }

void label_records(std::span<ElementNode> records, const TagSchema& schema,
                   std::string_view attr_name) {
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel if (n > kParallelCutoff)
  {
    std::vector<std::uint32_t> ordinals;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      ordinals.assign(1, static_cast<std::uint32_t>(i + 1));
      label_subtree(records[static_cast<std::size_t>(i)], ordinals, schema, attr_name);
    }
  }
}

std::vector<std::uint8_t> match_records(std::span<const ElementNode> records,
                                        const SimplePredicate& p,
                                        std::string_view structural_attr) {
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  std::vector<std::uint8_t> out(records.size(), 0);
#pragma omp parallel for schedule(static) if (n > kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        evaluate_predicate(records[static_cast<std::size_t>(i)], p, structural_attr) ? 1 : 0;
  }
  return out;
}

Assignment assign_records(std::span<const ElementNode> records,
                          std::span<const SimplePredicate> predicates) {
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  Assignment a;
  a.first_match.assign(records.size(), -1);
  a.overlapping.assign(records.size(), 0);
#pragma omp parallel for schedule(static) if (n > kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    bool overlap = false;
    a.first_match[k] = first_match(records[k], predicates, overlap);
    a.overlapping[k] = overlap ? 1 : 0;
  }
  return a;
}

std::vector<std::size_t> subtree_bytes(std::span<const ElementNode> nodes) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  std::vector<std::size_t> out(nodes.size(), 0);
#pragma omp parallel for schedule(static) if (n > kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = subtree_byte_size(nodes[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<SubtreeMeasure> measure_subtrees(std::span<const ElementNode> nodes) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  std::vector<SubtreeMeasure> out(nodes.size());
  // Fragment sizes vary a lot; dynamic keeps threads busy.
#pragma omp parallel for schedule(dynamic, 4) if (n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = measure(nodes[static_cast<std::size_t>(i)]);
  }
  return out;
}

namespace serial {

void label_records(std::span<ElementNode> records, const TagSchema& schema,
                   std::string_view attr_name) {
  std::vector<std::uint32_t> ordinals;
  for (std::size_t i = 0; i < records.size(); ++i) {
    ordinals.assign(1, static_cast<std::uint32_t>(i + 1));
    label_subtree(records[i], ordinals, schema, attr_name);
  }
}

std::vector<std::uint8_t> match_records(std::span<const ElementNode> records,
                                        const SimplePredicate& p,
                                        std::string_view structural_attr) {
  std::vector<std::uint8_t> out;
  out.reserve(records.size());
  for (const auto& rec : records) out.push_back(evaluate_predicate(rec, p, structural_attr) ? 1 : 0);
  return out;
}

Assignment assign_records(std::span<const ElementNode> records,
                          std::span<const SimplePredicate> predicates) {
  Assignment a;
  for (const auto& rec : records) {
    bool overlap = false;
    a.first_match.push_back(first_match(rec, predicates, overlap));
    a.overlapping.push_back(overlap ? 1 : 0);
  }
  return a;
}

std::vector<std::size_t> subtree_bytes(std::span<const ElementNode> nodes) {
  std::vector<std::size_t> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes) out.push_back(subtree_byte_size(node));
  return out;
}

std::vector<SubtreeMeasure> measure_subtrees(std::span<const ElementNode> nodes) {
  std::vector<SubtreeMeasure> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes) out.push_back(measure(node));
  return out;
}

}  // namespace serial

}  // namespace xfrag::kernels
