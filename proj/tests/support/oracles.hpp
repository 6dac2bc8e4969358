#pragma once

#include <regex>
#include <string>
#include <vector>

#include "xfrag/address.hpp"
#include "xfrag/annotate.hpp"
#include "xfrag/rng.hpp"
#include "xfrag/xml.hpp"

namespace xfrag::testing {

// Flattened tree with parent links, for brute-force structural questions.
struct FlatNode {
  const ElementNode* node;
  int parent;
};

inline void flatten(const ElementNode& n, int parent, std::vector<FlatNode>& out) {
  out.push_back({&n, parent});
  const int self = static_cast<int>(out.size()) - 1;
  for (const auto& c : n.children) flatten(c, self, out);
}

inline std::vector<FlatNode> flatten(const ElementNode& root) {
  std::vector<FlatNode> out;
  flatten(root, -1, out);
  return out;
}

inline bool walk_is_ancestor(const std::vector<FlatNode>& f, int a, int d) {
  for (int p = f[static_cast<std::size_t>(d)].parent; p >= 0; p = f[static_cast<std::size_t>(p)].parent) {
    if (p == a) return true;
  }
  return false;
}

// Relationship decided by walking parent links; indexes are preorder
// positions, so a < b means a precedes b among siblings.
inline Relationship walk_relationship(const std::vector<FlatNode>& f, int a, int b) {
  if (a == b) return Relationship::kSelf;
  const auto& na = f[static_cast<std::size_t>(a)];
  const auto& nb = f[static_cast<std::size_t>(b)];
  if (nb.parent == a) return Relationship::kParentChild;
  if (na.parent == b) return Relationship::kChildParent;
  if (walk_is_ancestor(f, a, b)) return Relationship::kAncestorDescendant;
  if (walk_is_ancestor(f, b, a)) return Relationship::kDescendantAncestor;
  if (na.parent >= 0 && na.parent == nb.parent) {
    return a < b ? Relationship::kPrecedingSibling : Relationship::kFollowingSibling;
  }
  return Relationship::kNone;
}

// Random pattern source with 0-5 levels; each level and the tag type is `d`
// or a small literal.
inline std::string random_pattern(Rng& rng, std::size_t max_levels = 5) {
  std::string s;
  const std::size_t levels = rng.uniform(0, max_levels);
  for (std::size_t i = 0; i < levels; ++i) {
    if (i) s += ".";
    s += rng.chance(1, 2) ? std::string("d") : std::to_string(rng.uniform(1, 4));
  }
  s += "/";
  s += rng.chance(1, 2) ? std::string("d") : std::to_string(rng.uniform(0, 6));
  return s;
}

// Translates a pattern source to an ECMAScript expression on its own terms.
inline std::regex pattern_regex(const std::string& source) {
  std::string re = "^";
  for (char c : source) {
    if (c == 'd') {
      re += "[0-9]+";
    } else if (c == '.') {
      re += "\\.";
    } else {
      re += c;
    }
  }
  re += "$";
  return std::regex(re);
}

}  // namespace xfrag::testing
