#include "xfrag/predicate.hpp"

#include <algorithm>
#include <charconv>

#include "xfrag/error.hpp"

namespace xfrag {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_name(std::string_view s) {
  if (s.empty()) return false;
  auto start = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(start) || start == '_' || start >= 0x80)) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
  });
}

Error predicate_error(std::string_view text, const std::string& why) {
  return Error(ErrorKind::kPredicateSyntax,
               "bad predicate \"" + std::string(text) + "\": " + why);
}

struct OpToken {
  std::string_view text;
  CompareOp op;
};

// Longest tokens first so "<=" wins over "<".
constexpr OpToken kOps[] = {
    {"<=", CompareOp::kLe}, {">=", CompareOp::kGe}, {"!=", CompareOp::kNe},
    {"==", CompareOp::kEq}, {"\xE2\x89\xA4", CompareOp::kLe},  // ≤
    {"\xE2\x89\xA5", CompareOp::kGe},                          // ≥
    {"\xE2\x89\xA0", CompareOp::kNe},                          // ≠
    {"=", CompareOp::kEq},  {"<", CompareOp::kLt},  {">", CompareOp::kGt},
};

bool needs_quotes(std::string_view v) {
  if (v.empty()) return true;
  if (is_space(v.front()) || is_space(v.back())) return true;
  return v.find_first_of("\"\\") != std::string_view::npos;
}

}  // namespace

std::string_view op_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
  }
  return "=";
}

TagPath parse_tag_path(std::string_view s) {
  s = trim(s);
  if (s.empty() || s.front() != '/') {
    throw Error(ErrorKind::kPredicateSyntax,
                "path \"" + std::string(s) + "\" must be absolute");
  }
  TagPath path;
  std::size_t start = 1;
  for (;;) {
    auto slash = s.find('/', start);
    auto piece = s.substr(start, slash == std::string_view::npos ? slash : slash - start);
    if (!is_name(piece)) {
      throw Error(ErrorKind::kPredicateSyntax,
                  "path \"" + std::string(s) + "\" has an invalid step \"" +
                      std::string(piece) + "\"");
    }
    path.emplace_back(piece);
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return path;
}

std::string format_tag_path(std::span<const std::string> path) {
  std::string out;
  for (const auto& step : path) {
    out.push_back('/');
    out += step;
  }
  return out;
}

SimplePredicate parse_predicate(std::string_view text) {
  auto s = trim(text);
  if (s.empty() || s.front() != '/') throw predicate_error(text, "path must be absolute");
  auto path_end = s.find_first_of(" \t<>=!\xE2");
  if (path_end == std::string_view::npos) throw predicate_error(text, "missing operator");

  SimplePredicate p;
  p.path = parse_tag_path(s.substr(0, path_end));
  if (p.path.size() < 2) throw predicate_error(text, "path must name a record element");

  auto rest = trim(s.substr(path_end));
  const OpToken* found = nullptr;
  for (const auto& tok : kOps) {
    if (rest.substr(0, tok.text.size()) == tok.text) {
      found = &tok;
      break;
    }
  }
  if (!found) throw predicate_error(text, "unknown operator");
  p.op = found->op;
  auto value = trim(rest.substr(found->text.size()));
  if (value.empty()) throw predicate_error(text, "missing value");

  if (value.front() == '"') {
    std::string out;
    std::size_t i = 1;
    for (; i < value.size(); ++i) {
      char c = value[i];
      if (c == '\\' && i + 1 < value.size()) {
        out.push_back(value[++i]);
      } else if (c == '"') {
        break;
      } else {
        out.push_back(c);
      }
    }
    if (i != value.size() - 1) throw predicate_error(text, "unterminated or trailing quote");
    p.value = std::move(out);
  } else {
    p.value = std::string(value);
  }
  return p;
}

std::string format_predicate(const SimplePredicate& p) {
  std::string out = format_tag_path(p.path);
  out.push_back(' ');
  out += op_symbol(p.op);
  out.push_back(' ');
  if (needs_quotes(p.value)) {
    out.push_back('"');
    for (char c : p.value) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    out.push_back('"');
  } else {
    out += p.value;
  }
  return out;
}

PathSelector parse_selector(std::string_view s) {
  TagPath path;
  try {
    path = parse_tag_path(s);
  } catch (const Error& e) {
    throw Error(ErrorKind::kInvalidSelector, e.what());
  }
  if (path.size() < 2) {
    throw Error(ErrorKind::kInvalidSelector,
                "selector \"" + std::string(s) + "\" names the document root");
  }
  return PathSelector{std::move(path)};
}

std::string format_selector(const PathSelector& s) { return format_tag_path(s.path); }

std::optional<double> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') ++i;
  std::size_t int_digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++frac_digits;
  }
  if (i != s.size() || int_digits + frac_digits == 0) return std::nullopt;
  // from_chars rejects a leading '+'.
  auto body = s[0] == '+' ? s.substr(1) : s;
  double v = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size()) return std::nullopt;
  return v;
}

bool compare_values(std::string_view lhs, CompareOp op, std::string_view rhs) {
  int cmp;
  auto a = parse_decimal(lhs);
  auto b = a ? parse_decimal(rhs) : std::nullopt;
  if (a && b) {
    cmp = *a < *b ? -1 : (*a > *b ? 1 : 0);
  } else {
    auto c = lhs.compare(rhs);
    cmp = c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  switch (op) {
    case CompareOp::kEq: return cmp == 0;
    case CompareOp::kNe: return cmp != 0;
    case CompareOp::kLt: return cmp < 0;
    case CompareOp::kLe: return cmp <= 0;
    case CompareOp::kGt: return cmp > 0;
    case CompareOp::kGe: return cmp >= 0;
  }
  return false;
}

bool evaluate_from(const ElementNode& node, const SimplePredicate& p, std::size_t start_depth,
                   std::string_view structural_attr) {
  if (start_depth >= p.path.size()) return false;
  std::span<const std::string> tail(p.path);
  tail = tail.subspan(start_depth + 1);
  bool hit = false;
  // Short-circuit is not worth a custom walk; record subtrees are small.
  for_each_leaf(node, tail, structural_attr, [&](const ElementNode& leaf) {
    if (!hit && compare_values(leaf.text, p.op, p.value)) hit = true;
  });
  return hit;
}

bool evaluate_predicate(const ElementNode& record, const SimplePredicate& p,
                        std::string_view structural_attr) {
  if (p.path.size() < 2 || record.tag != p.path[1]) return false;
  return evaluate_from(record, p, 1, structural_attr);
}

}  // namespace xfrag
