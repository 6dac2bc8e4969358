#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace xfrag {

struct Attribute {
  std::string name;
  std::string value;

  bool operator==(const Attribute&) const = default;
};

// An element of an ordered XML tree. `text` is the concatenation of the
// element's non-whitespace character content; for elements with element
// children it is carried through serialization but treated as structural
// noise by predicates.
struct ElementNode {
  std::string tag;
  std::vector<Attribute> attributes;
  std::vector<ElementNode> children;
  std::string text;

  ElementNode() = default;
  explicit ElementNode(std::string tag_name) : tag(std::move(tag_name)) {}

  const std::string* attribute(std::string_view name) const;
  // Replaces the value when present, appends otherwise.
  void set_attribute(std::string_view name, std::string value);
  bool remove_attribute(std::string_view name);

  bool is_leaf() const { return children.empty(); }
};

struct XmlTree {
  ElementNode root;
  std::string doc_id;
};

// SAX-style callbacks. parse_document drives a tree builder through this
// interface; other consumers may plug in directly.
class XmlEventHandler {
 public:
  virtual ~XmlEventHandler() = default;
  virtual void start_element(std::string_view tag, std::vector<Attribute> attributes,
                             std::size_t offset) = 0;
  virtual void end_element(std::string_view tag, std::size_t offset) = 0;
  virtual void characters(std::string_view text, std::size_t offset) = 0;
};

// Streams events for `input`. Throws ParseError (with byte offset) on
// malformed input and Error{kUnsupportedFeature} for constructs outside the
// supported subset: namespaces, CDATA, processing instructions other than the
// XML declaration, DOCTYPE, and non-predefined entity references.
void parse_events(std::string_view input, XmlEventHandler& handler);

XmlTree parse_document(std::string_view input, std::string doc_id = {});

struct SerializeOptions {
  bool xml_declaration = false;
};

std::string serialize_document(const XmlTree& tree, SerializeOptions options = {});
std::string serialize_element(const ElementNode& node);
void serialize_element_to(const ElementNode& node, std::string& out);

// Byte length of serialize_element(node), computed without materializing it.
std::size_t subtree_byte_size(const ElementNode& node);
// Bytes the element contributes itself: tags, attributes and text, i.e.
// subtree_byte_size(node) minus the children's subtree sizes.
std::size_t element_shell_bytes(const ElementNode& node);

bool structural_equal(const ElementNode& a, const ElementNode& b,
                      const std::set<std::string, std::less<>>& ignore_attrs = {});
bool structural_equal(const XmlTree& a, const XmlTree& b,
                      const std::set<std::string, std::less<>>& ignore_attrs = {});

std::size_t element_count(const ElementNode& node);
// Levels in the subtree; a lone element has height 1.
std::size_t subtree_height(const ElementNode& node);
std::size_t max_fanout(const ElementNode& node);

// Removes `attr_name` from every element in place.
void strip_attribute(ElementNode& node, std::string_view attr_name);

std::string escape_text(std::string_view raw);

}  // namespace xfrag
