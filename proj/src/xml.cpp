#include "xfrag/xml.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "xfrag/error.hpp"

namespace xfrag {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kUnsupportedFeature: return "unsupported-feature";
    case ErrorKind::kLabelingConflict: return "labeling-conflict";
    case ErrorKind::kAddressSyntax: return "address-syntax";
    case ErrorKind::kPatternSyntax: return "pattern-syntax";
    case ErrorKind::kPredicateSyntax: return "predicate-syntax";
    case ErrorKind::kEmptyProjection: return "empty-projection";
    case ErrorKind::kInvalidSelector: return "invalid-selector";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kInvalidK: return "invalid-k";
    case ErrorKind::kUnknownElement: return "unknown-element";
    case ErrorKind::kUnknownPath: return "unknown-path";
    case ErrorKind::kAllocationIncomplete: return "allocation-incomplete";
    case ErrorKind::kStrategyMismatch: return "strategy-mismatch";
    case ErrorKind::kIncompleteSet: return "incomplete-set";
    case ErrorKind::kLinkResolution: return "link-resolution";
    case ErrorKind::kInvalidCut: return "invalid-cut";
    case ErrorKind::kDuplicateCut: return "duplicate-cut";
    case ErrorKind::kIncompleteStream: return "incomplete-stream";
    case ErrorKind::kCycle: return "cycle";
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

const std::string* ElementNode::attribute(std::string_view name) const {
  for (const auto& attr : attributes) {
    if (attr.name == name) return &attr.value;
  }
  return nullptr;
}

void ElementNode::set_attribute(std::string_view name, std::string value) {
  for (auto& attr : attributes) {
    if (attr.name == name) {
      attr.value = std::move(value);
      return;
    }
  }
  attributes.push_back({std::string(name), std::move(value)});
}

bool ElementNode::remove_attribute(std::string_view name) {
  auto it = std::find_if(attributes.begin(), attributes.end(),
                         [&](const Attribute& a) { return a.name == name; });
  if (it == attributes.end()) return false;
  attributes.erase(it);
  return true;
}

namespace {

constexpr std::size_t kMaxDepth = 4096;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

Error unsupported(std::string_view construct, std::size_t offset) {
  return Error(ErrorKind::kUnsupportedFeature,
               "unsupported XML construct at byte " + std::to_string(offset) + ": " +
                   std::string(construct));
}

class EventParser {
 public:
  EventParser(std::string_view input, XmlEventHandler& handler)
      : in_(input), handler_(handler) {}

  void run() {
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    if (starts_with("<?xml") && pos_ + 5 < in_.size() && is_space(in_[pos_ + 5])) {
      parse_declaration();
    }
    skip_misc();
    if (at_end()) throw ParseError(pos_, "no root element");
    if (peek() != '<') throw ParseError(pos_, "text before root element");
    parse_element();
    skip_misc();
    if (!at_end()) throw ParseError(pos_, "content after root element");
  }

 private:
  bool at_end() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  bool starts_with(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

  void expect(char c) {
    if (at_end() || in_[pos_] != c) {
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void skip_spaces() {
    while (!at_end() && is_space(in_[pos_])) ++pos_;
  }

  void parse_declaration() {
    auto end = in_.find("?>", pos_);
    if (end == std::string_view::npos) throw ParseError(pos_, "unterminated XML declaration");
    auto body = in_.substr(pos_, end - pos_);
    auto enc = body.find("encoding");
    if (enc != std::string_view::npos) {
      auto q = body.find_first_of("\"'", enc);
      if (q != std::string_view::npos) {
        auto q2 = body.find(body[q], q + 1);
        std::string name(body.substr(q + 1, q2 - q - 1));
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (name != "utf-8" && name != "utf8") {
          throw unsupported("encoding " + name, pos_ + enc);
        }
      }
    }
    pos_ = end + 2;
  }

  // Whitespace, comments; anything else outside the root is rejected.
  void skip_misc() {
    for (;;) {
      skip_spaces();
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<!DOCTYPE")) {
        throw unsupported("DOCTYPE declaration", pos_);
      } else if (starts_with("<?")) {
        throw unsupported("processing instruction", pos_);
      } else {
        return;
      }
    }
  }

  void skip_comment() {
    auto end = in_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) throw ParseError(pos_, "unterminated comment");
    pos_ = end + 3;
  }

  std::string_view parse_name() {
    std::size_t start = pos_;
    if (at_end() || !is_name_start(static_cast<unsigned char>(peek()))) {
      if (!at_end() && peek() == ':') throw unsupported("namespace prefix", pos_);
      throw ParseError(pos_, "expected a name");
    }
    while (!at_end()) {
      unsigned char c = static_cast<unsigned char>(peek());
      if (c == ':') throw unsupported("namespace prefix", start);
      if (!is_name_char(c)) break;
      ++pos_;
    }
    return in_.substr(start, pos_ - start);
  }

  void parse_reference(std::string& out) {
    std::size_t start = pos_;
    ++pos_;  // '&'
    auto semi = in_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 32) {
      throw ParseError(start, "unterminated entity reference");
    }
    auto name = in_.substr(pos_, semi - pos_);
    pos_ = semi + 1;
    if (name == "lt") { out.push_back('<'); return; }
    if (name == "gt") { out.push_back('>'); return; }
    if (name == "amp") { out.push_back('&'); return; }
    if (name == "quot") { out.push_back('"'); return; }
    if (name == "apos") { out.push_back('\''); return; }
    if (!name.empty() && name[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = name.size() > 1 && name[1] == 'x';
      auto digits = name.substr(hex ? 2 : 1);
      if (digits.empty()) throw ParseError(start, "empty character reference");
      for (char c : digits) {
        std::uint32_t d;
        if (c >= '0' && c <= '9') d = static_cast<std::uint32_t>(c - '0');
        else if (hex && c >= 'a' && c <= 'f') d = static_cast<std::uint32_t>(c - 'a' + 10);
        else if (hex && c >= 'A' && c <= 'F') d = static_cast<std::uint32_t>(c - 'A' + 10);
        else throw ParseError(start, "bad character reference");
        cp = cp * (hex ? 16 : 10) + d;
        if (cp > 0x10FFFF) throw ParseError(start, "character reference out of range");
      }
      if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) {
        throw ParseError(start, "invalid character reference");
      }
      append_utf8(out, cp);
      return;
    }
    throw unsupported("entity reference &" + std::string(name) + ";", start);
  }

  std::string parse_attribute_value() {
    if (at_end() || (peek() != '"' && peek() != '\'')) {
      throw ParseError(pos_, "expected quoted attribute value");
    }
    char quote = peek();
    ++pos_;
    std::string value;
    for (;;) {
      if (at_end()) throw ParseError(pos_, "unterminated attribute value");
      char c = peek();
      if (c == quote) { ++pos_; break; }
      if (c == '<') throw ParseError(pos_, "'<' in attribute value");
      if (c == '&') { parse_reference(value); continue; }
      value.push_back(is_space(c) ? ' ' : c);
      ++pos_;
    }
    return value;
  }

  void parse_element() {
    std::size_t open_offset = pos_;
    if (depth_ >= kMaxDepth) throw ParseError(pos_, "element nesting too deep");
    expect('<');
    std::string_view tag = parse_name();
    std::vector<Attribute> attributes;
    for (;;) {
      std::size_t before = pos_;
      skip_spaces();
      if (at_end()) throw ParseError(pos_, "unterminated start tag");
      if (peek() == '/' || peek() == '>') break;
      if (before == pos_) throw ParseError(pos_, "expected whitespace before attribute");
      std::size_t attr_offset = pos_;
      std::string_view name = parse_name();
      if (name == "xmlns") throw unsupported("namespace declaration", attr_offset);
      skip_spaces();
      expect('=');
      skip_spaces();
      std::string value = parse_attribute_value();
      for (const auto& a : attributes) {
        if (a.name == name) {
          throw ParseError(attr_offset, "duplicate attribute '" + std::string(name) + "'");
        }
      }
      attributes.push_back({std::string(name), std::move(value)});
    }
    if (peek() == '/') {
      ++pos_;
      expect('>');
      handler_.start_element(tag, std::move(attributes), open_offset);
      handler_.end_element(tag, pos_);
      return;
    }
    expect('>');
    handler_.start_element(tag, std::move(attributes), open_offset);
    ++depth_;
    parse_content(tag);
    --depth_;
  }

  void parse_content(std::string_view tag) {
    std::string text;
    std::size_t text_offset = pos_;
    auto flush = [&] {
      if (!text.empty()) handler_.characters(text, text_offset);
      text.clear();
    };
    for (;;) {
      if (at_end()) throw ParseError(pos_, "unclosed element <" + std::string(tag) + ">");
      char c = peek();
      if (c == '<') {
        if (starts_with("</")) {
          flush();
          std::size_t close_offset = pos_;
          pos_ += 2;
          std::string_view name = parse_name();
          if (name != tag) {
            throw ParseError(close_offset, "mismatched end tag </" + std::string(name) +
                                               "> for <" + std::string(tag) + ">");
          }
          skip_spaces();
          expect('>');
          handler_.end_element(tag, close_offset);
          return;
        }
        if (starts_with("<!--")) {
          flush();
          skip_comment();
        } else if (starts_with("<![CDATA[")) {
          throw unsupported("CDATA section", pos_);
        } else if (starts_with("<!")) {
          throw unsupported("markup declaration", pos_);
        } else if (starts_with("<?")) {
          throw unsupported("processing instruction", pos_);
        } else {
          flush();
          parse_element();
        }
        text_offset = pos_;
      } else if (c == '&') {
        parse_reference(text);
      } else if (c == '\r') {
        text.push_back('\n');
        ++pos_;
        if (!at_end() && peek() == '\n') ++pos_;
      } else {
        text.push_back(c);
        ++pos_;
      }
    }
  }

  std::string_view in_;
  XmlEventHandler& handler_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

class TreeBuilder : public XmlEventHandler {
 public:
  void start_element(std::string_view tag, std::vector<Attribute> attributes,
                     std::size_t) override {
    ElementNode* node;
    if (stack_.empty()) {
      root_.tag = std::string(tag);
      node = &root_;
    } else {
      auto& siblings = stack_.back()->children;
      siblings.emplace_back(std::string(tag));
      node = &siblings.back();
    }
    node->attributes = std::move(attributes);
    stack_.push_back(node);
  }

  void end_element(std::string_view, std::size_t) override { stack_.pop_back(); }

  void characters(std::string_view text, std::size_t) override {
    // Whitespace-only runs between markup are insignificant.
    if (std::all_of(text.begin(), text.end(), is_space)) return;
    stack_.back()->text.append(text);
  }

  ElementNode take_root() { return std::move(root_); }

 private:
  ElementNode root_;
  std::vector<ElementNode*> stack_;
};

template <typename Sink>
void escape_into(std::string_view raw, bool attribute, Sink& sink) {
  std::size_t run = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char* rep = nullptr;
    switch (raw[i]) {
      case '<': rep = "&lt;"; break;
      case '>': rep = "&gt;"; break;
      case '&': rep = "&amp;"; break;
      case '"': rep = "&quot;"; break;
      case '\t': if (attribute) rep = "&#9;"; break;
      case '\n': if (attribute) rep = "&#10;"; break;
      case '\r': rep = "&#13;"; break;
      default: break;
    }
    if (rep) {
      sink.put(raw.substr(run, i - run));
      sink.put(rep);
      run = i + 1;
    }
  }
  sink.put(raw.substr(run));
}

struct StringSink {
  std::string& out;
  void put(std::string_view s) { out.append(s); }
};

struct CountSink {
  std::size_t n = 0;
  void put(std::string_view s) { n += s.size(); }
};

template <typename Sink>
void write_element(const ElementNode& node, Sink& sink) {
  sink.put("<");
  sink.put(node.tag);
  for (const auto& attr : node.attributes) {
    sink.put(" ");
    sink.put(attr.name);
    sink.put("=\"");
    escape_into(attr.value, true, sink);
    sink.put("\"");
  }
  if (node.text.empty() && node.children.empty()) {
    sink.put("/>");
    return;
  }
  sink.put(">");
  escape_into(node.text, false, sink);
  for (const auto& child : node.children) write_element(child, sink);
  sink.put("</");
  sink.put(node.tag);
  sink.put(">");
}

bool same_attributes(const ElementNode& a, const ElementNode& b,
                     const std::set<std::string, std::less<>>& ignore) {
  std::size_t counted_a = 0;
  for (const auto& attr : a.attributes) {
    if (ignore.count(attr.name)) continue;
    ++counted_a;
    const std::string* other = b.attribute(attr.name);
    if (!other || *other != attr.value) return false;
  }
  std::size_t counted_b = 0;
  for (const auto& attr : b.attributes) {
    if (!ignore.count(attr.name)) ++counted_b;
  }
  return counted_a == counted_b;
}

}  // namespace

void parse_events(std::string_view input, XmlEventHandler& handler) {
  EventParser(input, handler).run();
}

XmlTree parse_document(std::string_view input, std::string doc_id) {
  TreeBuilder builder;
  parse_events(input, builder);
  return XmlTree{builder.take_root(), std::move(doc_id)};
}

std::string escape_text(std::string_view raw) {
  std::string out;
  StringSink sink{out};
  escape_into(raw, false, sink);
  return out;
}

void serialize_element_to(const ElementNode& node, std::string& out) {
  StringSink sink{out};
  write_element(node, sink);
}

std::string serialize_element(const ElementNode& node) {
  std::string out;
  serialize_element_to(node, out);
  return out;
}

std::string serialize_document(const XmlTree& tree, SerializeOptions options) {
  std::string out;
  if (options.xml_declaration) out = "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n";
  serialize_element_to(tree.root, out);
  if (options.xml_declaration) out.push_back('\n');
  return out;
}

std::size_t subtree_byte_size(const ElementNode& node) {
  CountSink sink;
  write_element(node, sink);
  return sink.n;
}

std::size_t element_shell_bytes(const ElementNode& node) {
  CountSink sink;
  sink.put("<");
  sink.put(node.tag);
  for (const auto& attr : node.attributes) {
    sink.n += attr.name.size() + 4;  // space, '=', two quotes
    escape_into(attr.value, true, sink);
  }
  if (node.text.empty() && node.children.empty()) return sink.n + 2;
  escape_into(node.text, false, sink);
  return sink.n + 1 + 3 + node.tag.size();  // '>' and "</tag>"
}

bool structural_equal(const ElementNode& a, const ElementNode& b,
                      const std::set<std::string, std::less<>>& ignore_attrs) {
  if (a.tag != b.tag || a.text != b.text || a.children.size() != b.children.size()) {
    return false;
  }
  if (!same_attributes(a, b, ignore_attrs)) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structural_equal(a.children[i], b.children[i], ignore_attrs)) return false;
  }
  return true;
}

bool structural_equal(const XmlTree& a, const XmlTree& b,
                      const std::set<std::string, std::less<>>& ignore_attrs) {
  return structural_equal(a.root, b.root, ignore_attrs);
}

std::size_t element_count(const ElementNode& node) {
  std::size_t n = 1;
  for (const auto& child : node.children) n += element_count(child);
  return n;
}

std::size_t subtree_height(const ElementNode& node) {
  std::size_t h = 0;
  for (const auto& child : node.children) h = std::max(h, subtree_height(child));
  return h + 1;
}

std::size_t max_fanout(const ElementNode& node) {
  std::size_t f = node.children.size();
  for (const auto& child : node.children) f = std::max(f, max_fanout(child));
  return f;
}

void strip_attribute(ElementNode& node, std::string_view attr_name) {
  node.remove_attribute(attr_name);
  for (auto& child : node.children) strip_attribute(child, attr_name);
}

}  // namespace xfrag
