#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xfrag {

// Prefix label of one element: the 1-based position of each ancestor-or-self
// among its element siblings (root excluded), plus the element's tag type.
// Rendered as "1.4/6"; the root renders as "/0".
struct Address {
  std::vector<std::uint32_t> ordinals;
  std::uint32_t tag_type = 0;

  std::size_t depth() const { return ordinals.size(); }
  bool is_root() const { return ordinals.empty(); }
  // Position among siblings; 0 for the root.
  std::uint32_t last_ordinal() const { return ordinals.empty() ? 0 : ordinals.back(); }
  std::uint32_t leading_ordinal() const { return ordinals.empty() ? 0 : ordinals.front(); }

  bool operator==(const Address&) const = default;
};

// Document order over ordinal paths; tag type breaks no ties because two
// labels with equal ordinals name the same element.
bool document_order_less(const Address& a, const Address& b);

Address parse_address(std::string_view s);
std::optional<Address> try_parse_address(std::string_view s);
std::string format_address(const Address& a);

enum class Relationship {
  kSelf,
  kParentChild,
  kChildParent,
  kAncestorDescendant,
  kDescendantAncestor,
  kPrecedingSibling,
  kFollowingSibling,
  kNone,
};

std::string_view relationship_name(Relationship r);

// Decided from the ordinal sequences alone.
Relationship relationship(const Address& a, const Address& b);

// Address pattern such as "d.d/5": `d` matches one or more digits, a literal
// integer matches itself, `.` separates levels, and the part after `/` is the
// tag type (`d` for any). Compiled to an anchored token program equivalent
// to the regular expression returned by regex_source().
class AddressPattern {
 public:
  static AddressPattern compile(std::string_view source);

  bool matches(const Address& a) const;
  // Matches the rendered form directly, without building an Address.
  bool matches(std::string_view rendered) const;

  const std::string& source() const { return source_; }
  std::string regex_source() const;

 private:
  struct Segment {
    bool any = true;
    std::string literal;
  };

  std::string source_;
  std::vector<Segment> levels_;
  Segment tag_type_;
};

bool match_pattern(const Address& a, const AddressPattern& p);

}  // namespace xfrag
