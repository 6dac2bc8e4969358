#include "xfrag/annotate.hpp"

#include <algorithm>

#include "xfrag/error.hpp"
#include "xfrag/kernels.hpp"

namespace xfrag {

TagSchema::TagSchema(std::vector<std::string> tags) {
  for (auto& tag : tags) {
    if (index_.count(tag)) {
      throw Error(ErrorKind::kLabelingConflict, "tag \"" + tag + "\" listed twice in schema");
    }
    intern(tag);
  }
}

std::uint32_t TagSchema::intern(std::string_view tag) {
  auto it = index_.find(std::string(tag));
  if (it != index_.end()) return it->second;
  auto type = static_cast<std::uint32_t>(tags_.size());
  tags_.emplace_back(tag);
  index_.emplace(tags_.back(), type);
  return type;
}

std::optional<std::uint32_t> TagSchema::find(std::string_view tag) const {
  auto it = index_.find(std::string(tag));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t TagSchema::tag_type(std::string_view tag) const {
  auto t = find(tag);
  if (!t) throw Error(ErrorKind::kUnknownElement, "tag \"" + std::string(tag) + "\" not in schema");
  return *t;
}

const std::string& TagSchema::tag_name(std::uint32_t type) const {
  if (type >= tags_.size()) {
    throw Error(ErrorKind::kUnknownElement, "tag type " + std::to_string(type) + " not in schema");
  }
  return tags_[type];
}

namespace {

struct Step {
  const ElementNode* node;
  std::size_t position;  // 1-based among siblings, 0 for root
};

std::string render_chain(const std::vector<Step>& chain) {
  std::string out;
  for (const auto& step : chain) {
    out += "/" + step.node->tag;
    if (step.position) out += "[" + std::to_string(step.position) + "]";
  }
  return out;
}

// Document-order walk that fills the schema and rejects pre-existing labels.
void collect_schema(const ElementNode& node, std::size_t position, std::string_view attr_name,
                    TagSchema& schema, std::vector<Step>& chain) {
  chain.push_back({&node, position});
  if (node.attribute(attr_name)) {
    throw Error(ErrorKind::kLabelingConflict,
                "element " + render_chain(chain) + " already carries attribute \"" +
                    std::string(attr_name) + "\"");
  }
  schema.intern(node.tag);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    collect_schema(node.children[i], i + 1, attr_name, schema, chain);
  }
  chain.pop_back();
}

void check_labels(const ElementNode& node, const Address& expected_prefix,
                  std::string_view attr_name, std::vector<std::string>& by_type,
                  std::vector<Step>& chain) {
  const std::string* raw = node.attribute(attr_name);
  if (!raw) {
    throw Error(ErrorKind::kLabelingConflict,
                "element " + render_chain(chain) + " has no \"" + std::string(attr_name) +
                    "\" label");
  }
  auto label = try_parse_address(*raw);
  if (!label || label->ordinals != expected_prefix.ordinals) {
    throw Error(ErrorKind::kLabelingConflict,
                "element " + render_chain(chain) + " carries label \"" + *raw +
                    "\" inconsistent with its position");
  }
  if (label->tag_type >= by_type.size()) by_type.resize(label->tag_type + 1);
  auto& name = by_type[label->tag_type];
  if (name.empty()) {
    name = node.tag;
  } else if (name != node.tag) {
    throw Error(ErrorKind::kLabelingConflict,
                "tag type " + std::to_string(label->tag_type) + " used for both <" + name +
                    "> and <" + node.tag + ">");
  }
  Address child_prefix = expected_prefix;
  child_prefix.ordinals.push_back(0);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    child_prefix.ordinals.back() = static_cast<std::uint32_t>(i + 1);
    chain.push_back({&node.children[i], i + 1});
    check_labels(node.children[i], child_prefix, attr_name, by_type, chain);
    chain.pop_back();
  }
}

}  // namespace

AnnotatedTree annotate(const XmlTree& tree, std::string_view attr_name) {
  AnnotatedTree out;
  out.attr_name = std::string(attr_name);
  std::vector<Step> chain;
  collect_schema(tree.root, 0, attr_name, out.schema, chain);

  out.tree = tree;
  out.tree.root.set_attribute(attr_name, "/0");
  kernels::label_records(out.tree.root.children, out.schema, attr_name);
  return out;
}

AnnotatedTree from_labels(XmlTree tree, std::string_view attr_name) {
  std::vector<std::string> by_type;
  std::vector<Step> chain{{&tree.root, 0}};
  check_labels(tree.root, Address{}, attr_name, by_type, chain);
  if (label_of(tree.root, attr_name).tag_type != 0) {
    throw Error(ErrorKind::kLabelingConflict, "root label must have tag type 0");
  }
  for (std::size_t i = 0; i < by_type.size(); ++i) {
    if (by_type[i].empty()) {
      throw Error(ErrorKind::kLabelingConflict,
                  "tag type " + std::to_string(i) + " is never used");
    }
  }
  AnnotatedTree out;
  out.schema = TagSchema(std::move(by_type));
  out.tree = std::move(tree);
  out.attr_name = std::string(attr_name);
  return out;
}

std::optional<Address> try_label_of(const ElementNode& node, std::string_view attr_name) {
  const std::string* raw = node.attribute(attr_name);
  if (!raw) return std::nullopt;
  return try_parse_address(*raw);
}

Address label_of(const ElementNode& node, std::string_view attr_name) {
  const std::string* raw = node.attribute(attr_name);
  if (!raw) {
    throw Error(ErrorKind::kAddressSyntax,
                "element <" + node.tag + "> has no \"" + std::string(attr_name) + "\" label");
  }
  return parse_address(*raw);
}

XmlTree strip_labels(const AnnotatedTree& t) {
  XmlTree out = t.tree;
  strip_attribute(out.root, t.attr_name);
  return out;
}

namespace {

void max_leading(const ElementNode& node, std::string_view attr_name, std::size_t depth,
                 std::uint32_t tag_type, std::uint32_t& best) {
  if (auto label = try_label_of(node, attr_name)) {
    if (label->depth() == depth && label->tag_type == tag_type) {
      best = std::max(best, label->leading_ordinal());
    }
    // Labels below `depth` cannot contribute.
    if (label->depth() >= depth) return;
  }
  for (const auto& child : node.children) max_leading(child, attr_name, depth, tag_type, best);
}

}  // namespace

std::uint32_t record_count(const AnnotatedTree& t, std::size_t depth, std::uint32_t tag_type) {
  std::uint32_t best = 0;
  max_leading(t.tree.root, t.attr_name, depth, tag_type, best);
  return best;
}

}  // namespace xfrag
