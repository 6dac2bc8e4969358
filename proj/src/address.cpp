#include "xfrag/address.hpp"

#include <algorithm>
#include <charconv>

#include "xfrag/error.hpp"

namespace xfrag {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Canonical unsigned integer: digits only, no leading zero unless "0".
std::optional<std::uint32_t> parse_uint(std::string_view s) {
  if (s.empty() || s.size() > 10) return std::nullopt;
  if (!std::all_of(s.begin(), s.end(), is_digit)) return std::nullopt;
  if (s.size() > 1 && s[0] == '0') return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) v = v * 10 + static_cast<std::uint64_t>(c - '0');
  if (v > UINT32_MAX) return std::nullopt;
  return static_cast<std::uint32_t>(v);
}

}  // namespace

bool document_order_less(const Address& a, const Address& b) {
  return std::lexicographical_compare(a.ordinals.begin(), a.ordinals.end(),
                                      b.ordinals.begin(), b.ordinals.end());
}

std::optional<Address> try_parse_address(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos || s.find('/', slash + 1) != std::string_view::npos) {
    return std::nullopt;
  }
  Address a;
  auto tag = parse_uint(s.substr(slash + 1));
  if (!tag) return std::nullopt;
  a.tag_type = *tag;
  auto path = s.substr(0, slash);
  if (!path.empty()) {
    std::size_t start = 0;
    for (;;) {
      auto dot = path.find('.', start);
      auto piece = path.substr(start, dot == std::string_view::npos ? dot : dot - start);
      auto ordinal = parse_uint(piece);
      if (!ordinal || *ordinal == 0) return std::nullopt;
      a.ordinals.push_back(*ordinal);
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  }
  return a;
}

Address parse_address(std::string_view s) {
  auto a = try_parse_address(s);
  if (!a) {
    throw Error(ErrorKind::kAddressSyntax, "malformed address \"" + std::string(s) + "\"");
  }
  return *a;
}

std::string format_address(const Address& a) {
  std::string out;
  out.reserve(a.ordinals.size() * 4 + 3);
  for (std::size_t i = 0; i < a.ordinals.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(a.ordinals[i]);
  }
  out.push_back('/');
  out += std::to_string(a.tag_type);
  return out;
}

std::string_view relationship_name(Relationship r) {
  switch (r) {
    case Relationship::kSelf: return "self";
    case Relationship::kParentChild: return "parent-child";
    case Relationship::kChildParent: return "child-parent";
    case Relationship::kAncestorDescendant: return "ancestor-descendant";
    case Relationship::kDescendantAncestor: return "descendant-ancestor";
    case Relationship::kPrecedingSibling: return "preceding-sibling";
    case Relationship::kFollowingSibling: return "following-sibling";
    case Relationship::kNone: return "none";
  }
  return "none";
}

Relationship relationship(const Address& a, const Address& b) {
  const auto& x = a.ordinals;
  const auto& y = b.ordinals;
  std::size_t common = 0;
  while (common < x.size() && common < y.size() && x[common] == y[common]) ++common;

  if (common == x.size() && common == y.size()) return Relationship::kSelf;
  if (common == x.size()) {
    return y.size() - x.size() == 1 ? Relationship::kParentChild
                                    : Relationship::kAncestorDescendant;
  }
  if (common == y.size()) {
    return x.size() - y.size() == 1 ? Relationship::kChildParent
                                    : Relationship::kDescendantAncestor;
  }
  if (x.size() == y.size() && common + 1 == x.size()) {
    return x.back() < y.back() ? Relationship::kPrecedingSibling
                               : Relationship::kFollowingSibling;
  }
  return Relationship::kNone;
}

AddressPattern AddressPattern::compile(std::string_view source) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::kPatternSyntax,
                 "bad address pattern \"" + std::string(source) + "\": " + why);
  };
  auto segment = [&](std::string_view piece) {
    Segment s;
    if (piece == "d") return s;
    if (piece.empty()) throw fail("empty level");
    if (!std::all_of(piece.begin(), piece.end(), is_digit)) {
      throw fail("level must be 'd' or an integer");
    }
    s.any = false;
    s.literal = std::string(piece);
    return s;
  };

  AddressPattern p;
  p.source_ = std::string(source);
  auto slash = source.find('/');
  if (slash == std::string_view::npos) throw fail("missing '/tag-type'");
  auto levels = source.substr(0, slash);
  auto tag = source.substr(slash + 1);
  if (tag.find('/') != std::string_view::npos) throw fail("more than one '/'");
  if (!levels.empty()) {
    std::size_t start = 0;
    for (;;) {
      auto dot = levels.find('.', start);
      p.levels_.push_back(
          segment(levels.substr(start, dot == std::string_view::npos ? dot : dot - start)));
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  }
  if (tag.empty()) throw fail("missing tag type");
  p.tag_type_ = segment(tag);
  return p;
}

namespace {

// Consumes one level token from `s` at `pos`; mirrors `\d+` or a literal.
template <typename Seg>
bool consume(std::string_view s, std::size_t& pos, const Seg& seg) {
  if (seg.any) {
    std::size_t start = pos;
    while (pos < s.size() && is_digit(s[pos])) ++pos;
    return pos > start;
  }
  if (s.substr(pos, seg.literal.size()) != seg.literal) return false;
  pos += seg.literal.size();
  return true;
}

}  // namespace

bool AddressPattern::matches(std::string_view rendered) const {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (i) {
      if (pos >= rendered.size() || rendered[pos] != '.') return false;
      ++pos;
    }
    if (!consume(rendered, pos, levels_[i])) return false;
  }
  if (pos >= rendered.size() || rendered[pos] != '/') return false;
  ++pos;
  if (!consume(rendered, pos, tag_type_)) return false;
  return pos == rendered.size();
}

bool AddressPattern::matches(const Address& a) const {
  if (a.ordinals.size() != levels_.size()) return false;
  return matches(format_address(a));
}

std::string AddressPattern::regex_source() const {
  std::string out = "^";
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (i) out += "\\.";
    out += levels_[i].any ? std::string("\\d+") : levels_[i].literal;
  }
  out += "/";
  out += tag_type_.any ? std::string("\\d+") : tag_type_.literal;
  out += "$";
  return out;
}

bool match_pattern(const Address& a, const AddressPattern& p) { return p.matches(a); }

}  // namespace xfrag
