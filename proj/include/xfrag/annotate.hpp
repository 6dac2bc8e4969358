#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xfrag/address.hpp"
#include "xfrag/xml.hpp"

namespace xfrag {

inline constexpr std::string_view kDefaultLabelAttr = "address";

// Tag schematic table: tag name <-> tag type, numbered by first encounter in
// document order with the root at 0.
class TagSchema {
 public:
  TagSchema() = default;
  explicit TagSchema(std::vector<std::string> tags);

  // Returns the existing type or assigns the next one.
  std::uint32_t intern(std::string_view tag);
  std::optional<std::uint32_t> find(std::string_view tag) const;
  std::uint32_t tag_type(std::string_view tag) const;  // throws kUnknownElement
  const std::string& tag_name(std::uint32_t type) const;

  const std::vector<std::string>& tags() const { return tags_; }
  std::size_t size() const { return tags_.size(); }

  bool operator==(const TagSchema& other) const { return tags_ == other.tags_; }

 private:
  std::vector<std::string> tags_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct AnnotatedTree {
  XmlTree tree;
  TagSchema schema;
  std::string attr_name = std::string(kDefaultLabelAttr);
};

// Full traversal: inserts `attr_name` = rendered address on every element and
// builds the schema alongside. Throws kLabelingConflict if any element already
// carries `attr_name`.
AnnotatedTree annotate(const XmlTree& tree, std::string_view attr_name = kDefaultLabelAttr);

// Rebuilds an AnnotatedTree from a document that already carries labels
// (e.g. a reassembled or previously annotated file). Validates every label
// against its position and tag.
AnnotatedTree from_labels(XmlTree tree, std::string_view attr_name = kDefaultLabelAttr);

// Label of `node`; throws kAddressSyntax when absent or malformed.
Address label_of(const ElementNode& node, std::string_view attr_name);
std::optional<Address> try_label_of(const ElementNode& node, std::string_view attr_name);

XmlTree strip_labels(const AnnotatedTree& t);

// Largest leading ordinal among labels at `depth` with `tag_type`; 0 if none.
std::uint32_t record_count(const AnnotatedTree& t, std::size_t depth, std::uint32_t tag_type);

}  // namespace xfrag
