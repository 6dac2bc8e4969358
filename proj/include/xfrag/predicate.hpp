#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xfrag/xml.hpp"

namespace xfrag {

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view op_symbol(CompareOp op);

// Absolute element-name path such as /books/book/price.
using TagPath = std::vector<std::string>;

TagPath parse_tag_path(std::string_view s);
std::string format_tag_path(std::span<const std::string> path);

// Simple selection predicate `path op value`. The first two path components
// name the document root and the record element.
struct SimplePredicate {
  TagPath path;
  CompareOp op = CompareOp::kEq;
  std::string value;

  bool operator==(const SimplePredicate&) const = default;
};

// Accepts `/books/book/price <= 200`, `/books/book/publisher = "McGraw Hill"`;
// operators = != < <= > >= (also == and the symbols ≠ ≤ ≥).
SimplePredicate parse_predicate(std::string_view s);
std::string format_predicate(const SimplePredicate& p);

// Projection selector; cannot name the document root.
struct PathSelector {
  TagPath path;

  bool operator==(const PathSelector&) const = default;
};

PathSelector parse_selector(std::string_view s);
std::string format_selector(const PathSelector& s);

// Plain decimal: optional sign, digits, optional fraction. No exponents.
std::optional<double> parse_decimal(std::string_view s);

// Numeric comparison when both sides are decimals, byte-wise otherwise.
bool compare_values(std::string_view lhs, CompareOp op, std::string_view rhs);

// Existential evaluation of `p` on one record element: true iff some leaf
// reached by p.path[2..] under the record satisfies the comparison.
// Elements with element children, or carrying `structural_attr` (the
// vertical-cut reference marker), are not leaves.
bool evaluate_predicate(const ElementNode& record, const SimplePredicate& p,
                        std::string_view structural_attr = {});

// Same test starting at `node`, which sits at absolute path
// p.path[0..start_depth]; walks p.path[start_depth+1..].
bool evaluate_from(const ElementNode& node, const SimplePredicate& p, std::size_t start_depth,
                   std::string_view structural_attr = {});

// Visits leaf texts reached from `node` along `tail`.
template <typename Fn>
void for_each_leaf(const ElementNode& node, std::span<const std::string> tail,
                   std::string_view structural_attr, Fn&& fn) {
  if (tail.empty()) {
    if (node.children.empty() &&
        (structural_attr.empty() || node.attribute(structural_attr) == nullptr)) {
      fn(node);
    }
    return;
  }
  for (const auto& child : node.children) {
    if (child.tag == tail.front()) for_each_leaf(child, tail.subspan(1), structural_attr, fn);
  }
}

}  // namespace xfrag
