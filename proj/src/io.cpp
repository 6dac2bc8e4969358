#include "xfrag/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "xfrag/error.hpp"

namespace xfrag::io {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, std::string_view content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + p.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + p.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot write " + p.string());
  }
}

XmlTree load_document(const fs::path& p) { return parse_document(read_file(p), p.stem().string()); }

void save_document(const fs::path& p, const XmlTree& t) {
  write_file(p, serialize_document(t, SerializeOptions{true}));
}

namespace {

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string(what) + ": " + e.what());
  }
}

template <typename Fn>
auto with_json_errors(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string schema_json(const TagSchema& s, std::string_view attr_name) {
  ordered_json j;
  j["attr_name"] = attr_name;
  j["tags"] = s.tags();
  return j.dump(2) + "\n";
}

TagSchema parse_schema_json(std::string_view text) {
  json j = parse_json(text, "schema");
  return with_json_errors("schema", [&] {
    return TagSchema(j.at("tags").get<std::vector<std::string>>());
  });
}

namespace {

ordered_json hull_to_json(const KeyHull& h) {
  return {{"path", h.path},         {"leaves", h.leaves}, {"numeric", h.numeric},
          {"mixed", h.mixed},       {"single_valued", h.single_valued},
          {"lo", h.lo},             {"hi", h.hi}};
}

KeyHull hull_from_json(const json& j) {
  KeyHull h;
  h.path = j.at("path").get<std::string>();
  h.leaves = j.at("leaves").get<std::size_t>();
  h.numeric = j.at("numeric").get<bool>();
  h.mixed = j.at("mixed").get<bool>();
  h.single_valued = j.at("single_valued").get<bool>();
  h.lo = j.at("lo").get<std::string>();
  h.hi = j.at("hi").get<std::string>();
  return h;
}

ordered_json entry_to_json(const FragmentEntry& e) {
  ordered_json j;
  j["id"] = e.id;
  j["file"] = e.file;
  j["model"] = model_name(e.model);
  j["role"] = role_name(e.role);
  if (e.predicate) j["predicate"] = *e.predicate;
  if (e.selector) j["selector"] = *e.selector;
  if (e.ordinal_range) j["ordinal_range"] = {e.ordinal_range->lo, e.ordinal_range->hi};
  if (e.key) j["key"] = hull_to_json(*e.key);
  if (e.range_index) j["range_index"] = *e.range_index;
  if (e.bucket) j["bucket"] = *e.bucket;
  j["flagged"] = e.flagged;
  j["anchor"] = e.anchor;
  j["element_types"] = e.element_types;
  j["record_count"] = e.record_count;
  j["payload_bytes"] = e.payload_bytes;
  return j;
}

FragmentEntry entry_from_json(const json& j) {
  FragmentEntry e;
  e.id = j.at("id").get<std::string>();
  e.file = j.at("file").get<std::string>();
  e.model = parse_model_name(j.at("model").get<std::string>());
  e.role = parse_role_name(j.at("role").get<std::string>());
  if (j.contains("predicate")) e.predicate = j["predicate"].get<std::string>();
  if (j.contains("selector")) e.selector = j["selector"].get<std::string>();
  if (j.contains("ordinal_range")) {
    const auto& r = j["ordinal_range"];
    e.ordinal_range = OrdinalRange{r.at(0).get<std::uint32_t>(), r.at(1).get<std::uint32_t>()};
  }
  if (j.contains("key")) e.key = hull_from_json(j["key"]);
  if (j.contains("range_index")) e.range_index = j["range_index"].get<std::size_t>();
  if (j.contains("bucket")) e.bucket = j["bucket"].get<std::size_t>();
  e.flagged = j.value("flagged", false);
  e.anchor = j.at("anchor").get<std::string>();
  e.element_types = j.at("element_types").get<std::vector<std::uint32_t>>();
  e.record_count = j.at("record_count").get<std::size_t>();
  e.payload_bytes = j.at("payload_bytes").get<std::size_t>();
  return e;
}

}  // namespace

std::string manifest_json(const Manifest& m) {
  ordered_json j;
  j["origin"] = m.origin;
  j["model"] = m.model;
  j["attr_name"] = m.attr_name;
  j["ref_attr"] = m.ref_attr;
  j["schema"] = m.schema.tags();
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : m.params) params[k] = v;
  j["params"] = params;
  ordered_json frags = ordered_json::array();
  for (const auto& e : m.fragments) frags.push_back(entry_to_json(e));
  j["fragments"] = frags;
  ordered_json links = ordered_json::array();
  for (const auto& l : m.links) {
    links.push_back({{"remainder", l.remainder_address}, {"ref", l.ref_value},
                     {"fragment", l.fragment_id}});
  }
  j["links"] = links;
  j["overlaps"] = m.overlaps;
  return j.dump(2) + "\n";
}

Manifest parse_manifest_json(std::string_view text) {
  json j = parse_json(text, "manifest");
  return with_json_errors("manifest", [&] {
    Manifest m;
    m.origin = j.at("origin").get<std::string>();
    m.model = j.at("model").get<std::string>();
    m.attr_name = j.at("attr_name").get<std::string>();
    m.ref_attr = j.at("ref_attr").get<std::string>();
    m.schema = TagSchema(j.at("schema").get<std::vector<std::string>>());
    m.params = j.value("params", std::map<std::string, std::string>{});
    for (const auto& e : j.at("fragments")) m.fragments.push_back(entry_from_json(e));
    for (const auto& l : j.value("links", json::array())) {
      m.links.push_back({l.at("remainder").get<std::string>(), l.at("ref").get<std::string>(),
                         l.at("fragment").get<std::string>()});
    }
    m.overlaps = j.value("overlaps", std::vector<std::string>{});
    return m;
  });
}

std::string allocation_json(const Allocation& a) {
  ordered_json j;
  j["node_count"] = a.node_count;
  ordered_json placement = ordered_json::object();
  for (const auto& [id, node] : a.placement) placement[id] = node;
  j["placement"] = placement;
  return j.dump(2) + "\n";
}

Allocation parse_allocation_json(std::string_view text) {
  json j = parse_json(text, "allocation");
  return with_json_errors("allocation", [&] {
    Allocation a;
    a.node_count = j.at("node_count").get<std::size_t>();
    a.placement = j.at("placement").get<std::map<std::string, std::size_t>>();
    for (const auto& [id, node] : a.placement) {
      if (node >= a.node_count) {
        throw Error(ErrorKind::kParse, "fragment " + id + " placed on nonexistent node");
      }
    }
    return a;
  });
}

QueryWorkload parse_workload_json(std::string_view text, const TagSchema& schema) {
  json j = parse_json(text, "workload");
  return with_json_errors("workload", [&] {
    QueryWorkload w;
    for (const auto& q : j) {
      WorkloadQuery wq;
      wq.id = q.at("id").get<std::string>();
      wq.freq = q.at("freq").get<double>();
      for (const auto& name : q.at("elements")) {
        wq.elements.push_back(schema.tag_type(name.get<std::string>()));
      }
      w.queries.push_back(std::move(wq));
    }
    return w;
  });
}

std::string routing_json(const RoutingResult& r) {
  ordered_json j;
  j["nodes"] = r.nodes;
  ordered_json matches = ordered_json::array();
  for (const auto& a : r.matches) matches.push_back(format_address(a));
  j["matches"] = matches;
  j["scanned"] = r.scanned;
  return j.dump() + "\n";
}

std::string histogram_json(const StructureHistogram& h, std::optional<double> skew) {
  ordered_json j;
  ordered_json frags = ordered_json::array();
  for (const auto& f : h.fragments) {
    frags.push_back({{"id", f.id}, {"bytes", f.bytes}, {"elements", f.elements},
                     {"height", f.height}, {"max_fanout", f.max_fanout}});
  }
  j["fragments"] = frags;
  ordered_json buckets = ordered_json::array();
  for (const auto& b : h.byte_buckets) {
    buckets.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  }
  j["byte_histogram"] = buckets;
  j["min_bytes"] = h.min_bytes;
  j["max_bytes"] = h.max_bytes;
  j["mean_bytes"] = h.mean_bytes;
  j["cv"] = h.cv_bytes;
  if (skew) j["skew"] = *skew;
  return j.dump(2) + "\n";
}

fs::path node_dir(const fs::path& root, std::size_t node) {
  return root / "nodes" / ("node-" + std::to_string(node));
}

DirectoryFragmentStore::DirectoryFragmentStore(fs::path root, const Manifest& m,
                                               std::optional<Allocation> allocation)
    : root_(std::move(root)), manifest_(m), allocation_(std::move(allocation)) {}

std::optional<fs::path> DirectoryFragmentStore::locate(std::string_view id) const {
  const FragmentEntry* e = manifest_.find(id);
  if (!e) return std::nullopt;
  fs::path dir = root_;
  if (allocation_) {
    auto it = allocation_->placement.find(e->id);
    if (it == allocation_->placement.end()) return std::nullopt;
    dir = node_dir(root_, it->second);
  }
  fs::path p = dir / e->file;
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) return std::nullopt;
  return p;
}

bool DirectoryFragmentStore::contains(std::string_view id) const { return locate(id).has_value(); }

const XmlTree& DirectoryFragmentStore::get(std::string_view id) const {
  std::lock_guard lock(mu_);
  if (auto it = cache_.find(id); it != cache_.end()) return *it->second;
  auto p = locate(id);
  if (!p) throw Error(ErrorKind::kIncompleteSet, "fragment " + std::string(id) + " is not available");
  auto tree = std::make_unique<XmlTree>(load_document(*p));
  return *cache_.emplace(std::string(id), std::move(tree)).first->second;
}

void save_fillers(const fs::path& dir, const std::vector<Filler>& fillers) {
  for (const auto& f : fillers) save_document(dir / (f.id + ".xml"), f.content);
}

std::vector<Filler> load_fillers(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::kIo, "no filler directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 5 && name.front() == 'F' &&
        entry.path().extension() == ".xml") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Filler> out;
  for (const auto& p : files) {
    XmlTree t = load_document(p);
    out.push_back(Filler{p.stem().string(), std::move(t)});
  }
  return out;
}

}  // namespace xfrag::io
