#include "xfrag/fragment.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "xfrag/error.hpp"
#include "xfrag/kernels.hpp"

namespace xfrag {

std::string_view model_name(FragmentModel m) {
  switch (m) {
    case FragmentModel::kHorizontal: return "horizontal";
    case FragmentModel::kVerticalProjected: return "vertical-projected";
    case FragmentModel::kVerticalRemainder: return "vertical-remainder";
    case FragmentModel::kSize: return "size";
    case FragmentModel::kHybrid: return "hybrid";
  }
  return "horizontal";
}

FragmentModel parse_model_name(std::string_view s) {
  for (auto m : {FragmentModel::kHorizontal, FragmentModel::kVerticalProjected,
                 FragmentModel::kVerticalRemainder, FragmentModel::kSize,
                 FragmentModel::kHybrid}) {
    if (model_name(m) == s) return m;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown fragment model \"" + std::string(s) + "\"");
}

std::string_view role_name(FragmentRole r) {
  switch (r) {
    case FragmentRole::kRecords: return "records";
    case FragmentRole::kProjected: return "projected";
    case FragmentRole::kSubtree: return "subtree";
    case FragmentRole::kSkeleton: return "skeleton";
  }
  return "records";
}

FragmentRole parse_role_name(std::string_view s) {
  for (auto r : {FragmentRole::kRecords, FragmentRole::kProjected, FragmentRole::kSubtree,
                 FragmentRole::kSkeleton}) {
    if (role_name(r) == s) return r;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown fragment role \"" + std::string(s) + "\"");
}

const FragmentEntry* Manifest::find(std::string_view id) const {
  for (const auto& e : fragments) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const Fragment* FragmentSet::find(std::string_view id) const {
  for (const auto& f : fragments) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

std::string fragment_file_name(std::string_view origin, std::string_view id) {
  return std::string(origin) + "." + std::string(id) + ".xml";
}

namespace {

std::string origin_of(const AnnotatedTree& t) {
  return t.tree.doc_id.empty() ? std::string("doc") : t.tree.doc_id;
}

ElementNode shell_copy(const ElementNode& n) {
  ElementNode c(n.tag);
  c.attributes = n.attributes;
  c.text = n.text;
  return c;
}

void collect_labels(const ElementNode& n, std::string_view attr, std::set<std::uint32_t>& types,
                    std::set<std::uint32_t>& records) {
  if (auto a = try_label_of(n, attr)) {
    types.insert(a->tag_type);
    if (!a->is_root()) records.insert(a->leading_ordinal());
  }
  for (const auto& c : n.children) collect_labels(c, attr, types, records);
}

Manifest make_manifest(const AnnotatedTree& t, std::string model) {
  Manifest m;
  m.origin = origin_of(t);
  m.attr_name = t.attr_name;
  m.schema = t.schema;
  m.model = std::move(model);
  return m;
}

// Appends the fragment and fills the derived entry fields.
void emit(FragmentSet& out, ElementNode content, FragmentEntry entry) {
  std::set<std::uint32_t> types;
  std::set<std::uint32_t> records;
  collect_labels(content, out.manifest.attr_name, types, records);
  entry.element_types.assign(types.begin(), types.end());
  entry.record_count = records.size();
  entry.file = fragment_file_name(out.manifest.origin, entry.id);
  if (entry.payload_bytes == 0) {
    if (entry.role == FragmentRole::kSubtree) {
      entry.payload_bytes = subtree_byte_size(content);
    } else {
      for (const auto& c : content.children) entry.payload_bytes += subtree_byte_size(c);
    }
  }
  out.fragments.push_back(Fragment{entry.id, entry.model, XmlTree{std::move(content), {}},
                                   out.manifest.origin});
  out.fragments.back().content.doc_id = out.manifest.origin + "." + entry.id;
  out.manifest.fragments.push_back(std::move(entry));
}

// Order used to build hulls and value ranges: decimals by value, others
// byte-wise, all decimals before all non-decimals.
struct KeyValue {
  std::optional<double> number;
  std::string text;

  bool operator<(const KeyValue& o) const {
    if (number && o.number) return *number < *o.number;
    if (number != std::nullopt || o.number != std::nullopt) return number.has_value();
    return text < o.text;
  }
};

KeyValue key_value(const std::string& s) { return KeyValue{parse_decimal(s), s}; }

std::vector<std::string> leaf_values(const ElementNode& record, const TagPath& path) {
  std::vector<std::string> out;
  if (path.size() < 2 || record.tag != path[1]) return out;
  std::span<const std::string> tail(path);
  for_each_leaf(record, tail.subspan(2), {}, [&](const ElementNode& leaf) {
    out.push_back(leaf.text);
  });
  return out;
}

KeyHull compute_hull(std::span<const ElementNode> records, const TagPath& path) {
  KeyHull hull;
  hull.path = format_tag_path(path);
  std::optional<KeyValue> lo;
  std::optional<KeyValue> hi;
  bool any_numeric = false;
  bool any_text = false;
  for (const auto& rec : records) {
    auto values = leaf_values(rec, path);
    if (values.size() > 1) hull.single_valued = false;
    for (auto& v : values) {
      ++hull.leaves;
      KeyValue kv = key_value(v);
      (kv.number ? any_numeric : any_text) = true;
      if (!lo || kv < *lo) lo = kv;
      if (!hi || *hi < kv) hi = kv;
    }
  }
  hull.numeric = !any_text;
  hull.mixed = any_numeric && any_text;
  if (lo && !hull.mixed) {
    hull.lo = lo->text;
    hull.hi = hi->text;
  }
  return hull;
}

void check_record_path(const AnnotatedTree& t, const TagPath& path) {
  if (path.size() < 2) {
    throw Error(ErrorKind::kPredicateSyntax, "path must name a record element");
  }
  if (path[0] != t.tree.root.tag) {
    throw Error(ErrorKind::kUnknownPath, "path " + format_tag_path(path) +
                                             " does not start at root <" + t.tree.root.tag + ">");
  }
}

std::string root_anchor(const ElementNode& root) { return "/" + root.tag; }

void check_ref_attr(const ElementNode& n, std::string_view ref_attr, std::string_view label_attr) {
  if (ref_attr == label_attr) {
    throw Error(ErrorKind::kInvalidArgument, "reference attribute must differ from label attribute");
  }
  if (n.attribute(ref_attr)) {
    throw Error(ErrorKind::kLabelingConflict, "element <" + n.tag + "> already carries \"" +
                                                  std::string(ref_attr) + "\"");
  }
  for (const auto& c : n.children) check_ref_attr(c, ref_attr, {});
}

void add_ref_token(ElementNode& parent, std::string_view ref_attr, const std::string& token) {
  if (const std::string* existing = parent.attribute(ref_attr)) {
    parent.set_attribute(ref_attr, *existing + " " + token);
  } else {
    parent.set_attribute(ref_attr, token);
  }
}

struct CutResult {
  ElementNode remainder;
  std::vector<ElementNode> cuts;
  std::vector<ManifestLink> links;  // fragment_id left empty
};

void cut_along(ElementNode& node, const TagPath& path, std::size_t depth, std::string_view attr,
               std::string_view ref_attr, CutResult& out) {
  const bool last = depth + 2 == path.size();
  const std::string& want = path[depth + 1];
  if (!last) {
    for (auto& child : node.children) {
      if (child.tag == want) cut_along(child, path, depth + 1, attr, ref_attr, out);
    }
    return;
  }
  std::vector<ElementNode> kept;
  kept.reserve(node.children.size());
  for (auto& child : node.children) {
    if (child.tag != want) {
      kept.push_back(std::move(child));
      continue;
    }
    std::string token = format_address(label_of(child, attr));
    add_ref_token(node, ref_attr, token);
    out.links.push_back({format_address(label_of(node, attr)), token, {}});
    out.cuts.push_back(std::move(child));
  }
  node.children = std::move(kept);
}

CutResult cut_selector(const ElementNode& root, const PathSelector& selector,
                       std::string_view attr, std::string_view ref_attr) {
  CutResult out;
  out.remainder = root;
  if (root.tag == selector.path[0]) {
    cut_along(out.remainder, selector.path, 0, attr, ref_attr, out);
  }
  return out;
}

void check_selector(const AnnotatedTree& t, const PathSelector& selector,
                    std::string_view ref_attr) {
  if (selector.path.size() < 2) {
    throw Error(ErrorKind::kInvalidSelector, "selector " + format_selector(selector) +
                                                 " names the document root");
  }
  check_ref_attr(t.tree.root, ref_attr, t.attr_name);
}

ElementNode projected_root(const PathSelector& selector, std::vector<ElementNode> cuts) {
  ElementNode root(selector.path.back());
  root.children = std::move(cuts);
  return root;
}

struct HorizontalSplit {
  std::vector<ElementNode> pieces;  // one per predicate, then the rest
  std::vector<std::string> overlaps;
};

HorizontalSplit split_horizontal(const AnnotatedTree& t,
                                 const std::vector<SimplePredicate>& predicates) {
  for (const auto& p : predicates) {
    check_record_path(t, p.path);
    if (p.path[1] != predicates.front().path[1]) {
      throw Error(ErrorKind::kInvalidArgument,
                  "horizontal predicates must share one record path");
    }
  }
  const auto& root = t.tree.root;
  auto assignment = kernels::assign_records(root.children, predicates);

  HorizontalSplit split;
  split.pieces.assign(predicates.size() + 1, shell_copy(root));
  for (std::size_t i = 0; i < root.children.size(); ++i) {
    int target = assignment.first_match[i];
    auto slot = target < 0 ? predicates.size() : static_cast<std::size_t>(target);
    split.pieces[slot].children.push_back(root.children[i]);
    if (assignment.overlapping[i]) {
      split.overlaps.push_back(*root.children[i].attribute(t.attr_name));
    }
  }
  return split;
}

std::string predicate_list(const std::vector<SimplePredicate>& predicates) {
  std::string out;
  for (const auto& p : predicates) {
    if (!out.empty()) out += "; ";
    out += format_predicate(p);
  }
  return out;
}

}  // namespace

FragmentSet horizontal_fragment(const AnnotatedTree& t,
                                const std::vector<SimplePredicate>& predicates) {
  auto split = split_horizontal(t, predicates);
  FragmentSet out;
  out.manifest = make_manifest(t, "horizontal");
  out.manifest.params["predicates"] = predicate_list(predicates);
  out.manifest.overlaps = std::move(split.overlaps);

  const std::string anchor = root_anchor(t.tree.root);
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    FragmentEntry e;
    e.id = "p" + std::to_string(i);
    e.model = FragmentModel::kHorizontal;
    e.role = FragmentRole::kRecords;
    e.predicate = format_predicate(predicates[i]);
    e.key = compute_hull(split.pieces[i].children, predicates[i].path);
    e.anchor = anchor;
    emit(out, std::move(split.pieces[i]), std::move(e));
  }
  auto& rest = split.pieces.back();
  if (!rest.children.empty() || predicates.empty()) {
    FragmentEntry e;
    e.id = "rest";
    e.model = FragmentModel::kHorizontal;
    e.role = FragmentRole::kRecords;
    e.anchor = anchor;
    emit(out, std::move(rest), std::move(e));
  }
  return out;
}

FragmentSet horizontal_range_fragment(const AnnotatedTree& t, std::size_t n_parts) {
  if (n_parts == 0) throw Error(ErrorKind::kInvalidArgument, "n_parts must be positive");
  const auto& root = t.tree.root;
  // The last root child's label carries the record count.
  const std::size_t total =
      root.children.empty() ? 0 : label_of(root.children.back(), t.attr_name).leading_ordinal();

  FragmentSet out;
  out.manifest = make_manifest(t, "range");
  out.manifest.params["parts"] = std::to_string(n_parts);
  out.manifest.params["key"] = "ordinal";

  const std::size_t base = total / n_parts;
  const std::size_t extra = total % n_parts;
  std::size_t next = 0;
  for (std::size_t j = 0; j < n_parts; ++j) {
    std::size_t count = base + (j < extra ? 1 : 0);
    ElementNode piece = shell_copy(root);
    piece.children.assign(root.children.begin() + static_cast<std::ptrdiff_t>(next),
                          root.children.begin() + static_cast<std::ptrdiff_t>(next + count));
    FragmentEntry e;
    e.id = "r" + std::to_string(j);
    e.model = FragmentModel::kHorizontal;
    e.role = FragmentRole::kRecords;
    e.ordinal_range = OrdinalRange{static_cast<std::uint32_t>(next + 1),
                                   static_cast<std::uint32_t>(next + count)};
    e.range_index = j;
    e.anchor = root_anchor(root);
    emit(out, std::move(piece), std::move(e));
    next += count;
  }
  return out;
}

FragmentSet value_range_fragment(const AnnotatedTree& t, const TagPath& key,
                                 std::size_t n_parts) {
  if (n_parts == 0) throw Error(ErrorKind::kInvalidArgument, "n_parts must be positive");
  check_record_path(t, key);
  const auto& root = t.tree.root;

  struct Keyed {
    KeyValue value;
    std::size_t index;
  };
  std::vector<Keyed> keyed;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < root.children.size(); ++i) {
    auto values = leaf_values(root.children[i], key);
    if (values.empty()) {
      rest.push_back(i);
    } else {
      keyed.push_back({key_value(values.front()), i});
    }
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const Keyed& a, const Keyed& b) { return a.value < b.value; });

  FragmentSet out;
  out.manifest = make_manifest(t, "range");
  out.manifest.params["parts"] = std::to_string(n_parts);
  out.manifest.params["key"] = format_tag_path(key);

  const std::size_t base = keyed.size() / n_parts;
  const std::size_t extra = keyed.size() % n_parts;
  std::size_t next = 0;
  for (std::size_t j = 0; j < n_parts; ++j) {
    std::size_t count = base + (j < extra ? 1 : 0);
    std::vector<std::size_t> members;
    for (std::size_t k = next; k < next + count; ++k) members.push_back(keyed[k].index);
    std::sort(members.begin(), members.end());
    ElementNode piece = shell_copy(root);
    for (auto idx : members) piece.children.push_back(root.children[idx]);
    FragmentEntry e;
    e.id = "r" + std::to_string(j);
    e.model = FragmentModel::kHorizontal;
    e.role = FragmentRole::kRecords;
    e.key = compute_hull(piece.children, key);
    e.range_index = j;
    e.anchor = root_anchor(root);
    emit(out, std::move(piece), std::move(e));
    next += count;
  }
  if (!rest.empty()) {
    ElementNode piece = shell_copy(root);
    for (auto idx : rest) piece.children.push_back(root.children[idx]);
    FragmentEntry e;
    e.id = "rest";
    e.model = FragmentModel::kHorizontal;
    e.role = FragmentRole::kRecords;
    e.key = compute_hull(piece.children, key);
    e.anchor = root_anchor(root);
    emit(out, std::move(piece), std::move(e));
  }
  return out;
}

FragmentSet vertical_fragment(const AnnotatedTree& t, const PathSelector& selector,
                              std::string_view ref_attr) {
  check_selector(t, selector, ref_attr);
  auto cut = cut_selector(t.tree.root, selector, t.attr_name, ref_attr);
  if (cut.cuts.empty()) {
    throw Error(ErrorKind::kEmptyProjection,
                "selector " + format_selector(selector) + " matches no element");
  }
  FragmentSet out;
  out.manifest = make_manifest(t, "vertical");
  out.manifest.ref_attr = std::string(ref_attr);
  out.manifest.params["selector"] = format_selector(selector);

  FragmentEntry rem;
  rem.id = "remainder";
  rem.model = FragmentModel::kVerticalRemainder;
  rem.role = FragmentRole::kRecords;
  rem.selector = format_selector(selector);
  rem.anchor = root_anchor(t.tree.root);
  emit(out, std::move(cut.remainder), std::move(rem));

  FragmentEntry proj;
  proj.id = "projected";
  proj.model = FragmentModel::kVerticalProjected;
  proj.role = FragmentRole::kProjected;
  proj.selector = format_selector(selector);
  proj.anchor = format_selector(selector);
  emit(out, projected_root(selector, std::move(cut.cuts)), std::move(proj));

  for (auto& link : cut.links) link.fragment_id = "projected";
  out.manifest.links = std::move(cut.links);
  return out;
}

FragmentSet hybrid_fragment(const AnnotatedTree& t, const std::vector<SimplePredicate>& predicates,
                            const PathSelector& selector, std::string_view ref_attr) {
  check_selector(t, selector, ref_attr);
  auto split = split_horizontal(t, predicates);

  FragmentSet out;
  out.manifest = make_manifest(t, "hybrid");
  out.manifest.ref_attr = std::string(ref_attr);
  out.manifest.params["predicates"] = predicate_list(predicates);
  out.manifest.params["selector"] = format_selector(selector);
  out.manifest.overlaps = std::move(split.overlaps);

  bool any_cut = false;
  for (std::size_t i = 0; i < split.pieces.size(); ++i) {
    const bool is_rest = i == predicates.size();
    if (is_rest && split.pieces[i].children.empty() && !predicates.empty()) continue;
    const std::string base = is_rest ? std::string("rest") : "p" + std::to_string(i);
    std::optional<std::string> pred;
    if (!is_rest) pred = format_predicate(predicates[i]);

    // The hull describes the piece's records, whichever side of the cut
    // their leaves end up on.
    std::optional<KeyHull> hull;
    if (!is_rest) hull = compute_hull(split.pieces[i].children, predicates[i].path);
    auto cut = cut_selector(split.pieces[i], selector, t.attr_name, ref_attr);
    FragmentEntry rem;
    rem.id = base + "-remainder";
    rem.model = FragmentModel::kHybrid;
    rem.role = FragmentRole::kRecords;
    rem.predicate = pred;
    rem.selector = format_selector(selector);
    rem.anchor = root_anchor(t.tree.root);
    rem.key = hull;
    emit(out, std::move(cut.remainder), std::move(rem));
    if (cut.cuts.empty()) continue;

    any_cut = true;
    FragmentEntry proj;
    proj.id = base + "-projected";
    proj.model = FragmentModel::kHybrid;
    proj.role = FragmentRole::kProjected;
    proj.predicate = pred;
    proj.selector = format_selector(selector);
    proj.anchor = format_selector(selector);
    proj.key = hull;
    for (auto& link : cut.links) link.fragment_id = proj.id;
    out.manifest.links.insert(out.manifest.links.end(), cut.links.begin(), cut.links.end());
    emit(out, projected_root(selector, std::move(cut.cuts)), std::move(proj));
  }
  if (!any_cut) {
    throw Error(ErrorKind::kEmptyProjection,
                "selector " + format_selector(selector) + " matches no element");
  }
  return out;
}

FragmentSet fragment_by_size(const AnnotatedTree& t, std::size_t threshold) {
  if (threshold == 0) throw Error(ErrorKind::kInvalidArgument, "size threshold must be positive");
  const auto& root = t.tree.root;
  auto sizes = kernels::subtree_bytes(root.children);

  FragmentSet out;
  out.manifest = make_manifest(t, "size");
  out.manifest.params["threshold"] = std::to_string(threshold);

  struct Bucket {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t bytes = 0;
    bool flagged = false;
  };
  std::vector<Bucket> buckets;
  Bucket open;
  bool has_open = false;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] > threshold) {
      if (has_open) buckets.push_back(open);
      buckets.push_back({i, i + 1, sizes[i], true});
      has_open = false;
      continue;
    }
    if (has_open && open.bytes + sizes[i] <= threshold) {
      open.end = i + 1;
      open.bytes += sizes[i];
      continue;
    }
    if (has_open) buckets.push_back(open);
    open = {i, i + 1, sizes[i], false};
    has_open = true;
  }
  if (has_open) buckets.push_back(open);
  if (buckets.empty()) buckets.push_back({0, 0, 0, false});

  for (std::size_t b = 0; b < buckets.size(); ++b) {
    ElementNode piece = shell_copy(root);
    piece.children.assign(root.children.begin() + static_cast<std::ptrdiff_t>(buckets[b].begin),
                          root.children.begin() + static_cast<std::ptrdiff_t>(buckets[b].end));
    FragmentEntry e;
    e.id = "s" + std::to_string(b);
    e.model = FragmentModel::kSize;
    e.role = FragmentRole::kRecords;
    e.bucket = b;
    e.flagged = buckets[b].flagged;
    e.payload_bytes = buckets[b].bytes;
    e.anchor = root_anchor(root);
    emit(out, std::move(piece), std::move(e));
  }
  return out;
}

namespace {

using MeasureMap = std::unordered_map<const ElementNode*, kernels::SubtreeMeasure>;

kernels::SubtreeMeasure measure_all(const ElementNode& node, MeasureMap& memo) {
  kernels::SubtreeMeasure m;
  m.bytes = element_shell_bytes(node);
  m.elements = 1;
  m.max_fanout = node.children.size();
  std::size_t child_height = 0;
  for (const auto& child : node.children) {
    auto c = measure_all(child, memo);
    m.bytes += c.bytes;
    m.elements += c.elements;
    m.max_fanout = std::max(m.max_fanout, c.max_fanout);
    child_height = std::max(child_height, c.height);
  }
  m.height = child_height + 1;
  memo.emplace(&node, m);
  return m;
}

struct SimplexState {
  const SizeConstraints& limits;
  const MeasureMap& measures;
  std::string_view attr;
  std::string_view ref_attr;
  std::vector<std::pair<ElementNode, std::pair<std::string, bool>>> cuts;  // subtree, anchor, flagged
  std::vector<ManifestLink> links;

  bool fits(const ElementNode& n) const {
    const auto& m = measures.at(&n);
    return m.bytes <= limits.max_size && m.max_fanout <= limits.max_width &&
           m.height <= limits.max_depth;
  }

  void descend(const ElementNode& node, ElementNode& skeleton, const std::string& path) {
    for (const auto& child : node.children) {
      std::string child_path = path + "/" + child.tag;
      bool ok = fits(child);
      if (ok || child.children.empty()) {
        std::string token = format_address(label_of(child, attr));
        add_ref_token(skeleton, ref_attr, token);
        links.push_back({format_address(label_of(node, attr)), token,
                         "c" + std::to_string(cuts.size())});
        cuts.push_back({child, {child_path, !ok}});
        continue;
      }
      ElementNode inner = shell_copy(child);
      descend(child, inner, child_path);
      skeleton.children.push_back(std::move(inner));
    }
  }
};

}  // namespace

FragmentSet simplex_fragment(const AnnotatedTree& t, const SizeConstraints& c,
                             std::string_view ref_attr) {
  if (c.max_size == 0 || c.max_width == 0 || c.max_depth == 0) {
    throw Error(ErrorKind::kInvalidArgument, "SimpleX constraints must be positive");
  }
  check_ref_attr(t.tree.root, ref_attr, t.attr_name);
  const auto& root = t.tree.root;
  MeasureMap measures;
  measure_all(root, measures);

  FragmentSet out;
  out.manifest = make_manifest(t, "simplex");
  out.manifest.ref_attr = std::string(ref_attr);
  out.manifest.params["max_size"] = std::to_string(c.max_size);
  out.manifest.params["max_width"] = std::to_string(c.max_width);
  out.manifest.params["max_depth"] = std::to_string(c.max_depth);

  SimplexState state{c, measures, t.attr_name, ref_attr, {}, {}};
  if (state.fits(root) || root.children.empty()) {
    FragmentEntry e;
    e.id = "c0";
    e.model = FragmentModel::kSize;
    e.role = FragmentRole::kRecords;
    e.flagged = !state.fits(root);
    e.anchor = root_anchor(root);
    e.payload_bytes = subtree_byte_size(root);
    emit(out, root, std::move(e));
    return out;
  }

  ElementNode skeleton = shell_copy(root);
  state.descend(root, skeleton, "/" + root.tag);

  FragmentEntry sk;
  sk.id = "skeleton";
  sk.model = FragmentModel::kSize;
  sk.role = FragmentRole::kSkeleton;
  sk.anchor = root_anchor(root);
  emit(out, std::move(skeleton), std::move(sk));

  for (std::size_t i = 0; i < state.cuts.size(); ++i) {
    auto& [subtree, info] = state.cuts[i];
    FragmentEntry e;
    e.id = "c" + std::to_string(i);
    e.model = FragmentModel::kSize;
    e.role = FragmentRole::kSubtree;
    e.flagged = info.second;
    e.anchor = info.first;
    emit(out, std::move(subtree), std::move(e));
  }
  out.manifest.links = std::move(state.links);
  return out;
}

std::string selector_pattern(const TagSchema& schema, const PathSelector& selector) {
  std::string out;
  for (std::size_t i = 1; i < selector.path.size(); ++i) {
    if (i > 1) out.push_back('.');
    out.push_back('d');
  }
  out += "/" + std::to_string(schema.tag_type(selector.path.back()));
  return out;
}

namespace {

void select_walk(const ElementNode& n, std::string_view attr, const AddressPattern& p,
                 std::vector<Address>& out) {
  if (auto a = try_label_of(n, attr); a && p.matches(*a)) out.push_back(*a);
  for (const auto& c : n.children) select_walk(c, attr, p, out);
}

}  // namespace

std::vector<Address> select_by_pattern(const AnnotatedTree& t, std::string_view pattern) {
  auto p = AddressPattern::compile(pattern);
  std::vector<Address> out;
  select_walk(t.tree.root, t.attr_name, p, out);
  return out;
}

}  // namespace xfrag
