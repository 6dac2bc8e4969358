#include "xfrag/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>

#include "xfrag/annotate.hpp"
#include "xfrag/cluster.hpp"
#include "xfrag/error.hpp"
#include "xfrag/fillers.hpp"
#include "xfrag/fragment.hpp"
#include "xfrag/generator.hpp"
#include "xfrag/io.hpp"
#include "xfrag/stats.hpp"

namespace xfrag {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string in;
  std::string out;
  std::string manifest;
  std::uint64_t seed = 1;
  std::string attr = std::string(kDefaultLabelAttr);

  std::string schema_out;
  std::string model;
  std::vector<std::string> predicates;
  std::size_t parts = 0;
  std::string key;
  std::string path;
  std::string ref = std::string(kDefaultRefAttr);
  std::size_t threshold = 0;
  std::size_t max_size = 0;
  std::size_t max_width = 0;
  std::size_t max_depth = 0;
  std::size_t nodes = 0;
  std::string strategy = "round-robin";
  bool strip = false;
  std::size_t records = 0;
  std::vector<std::string> cuts;
  std::string hole_tag = std::string(kDefaultHoleTag);
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

// Collects output files so a failing command can remove what it wrote.
class OutputGuard {
 public:
  void write(const fs::path& p, std::string_view content) {
    io::write_file(p, content);
    written_.push_back(p);
  }
  void commit() { written_.clear(); }
  ~OutputGuard() {
    std::error_code ec;
    for (const auto& p : written_) fs::remove(p, ec);
  }

 private:
  std::vector<fs::path> written_;
};

bool carries_labels(const XmlTree& t, std::string_view attr) {
  return t.root.attribute(attr) != nullptr;
}

AnnotatedTree load_annotated(const Options& o) {
  XmlTree t = io::load_document(o.in);
  if (carries_labels(t, o.attr)) return from_labels(std::move(t), o.attr);
  return annotate(t, o.attr);
}

fs::path manifest_dir(const fs::path& manifest) {
  return manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
}

struct LoadedSet {
  Manifest manifest;
  std::optional<Allocation> allocation;
  fs::path dir;
};

LoadedSet load_set(const Options& o) {
  require(!o.manifest.empty(), "--manifest is required");
  LoadedSet s;
  s.manifest = io::parse_manifest_json(io::read_file(o.manifest));
  s.dir = manifest_dir(o.manifest);
  fs::path alloc = s.dir / "allocation.json";
  std::error_code ec;
  if (fs::is_regular_file(alloc, ec)) {
    s.allocation = io::parse_allocation_json(io::read_file(alloc));
  }
  return s;
}

Allocation single_node(const Manifest& m) {
  Allocation a;
  a.node_count = 1;
  for (const auto& e : m.fragments) a.placement[e.id] = 0;
  return a;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    OutputGuard g;
    g.write(o.out, text);
    g.commit();
  }
}

int cmd_annotate(const Options& o, std::ostream&) {
  require(!o.in.empty() && !o.out.empty(), "annotate needs --in and --out");
  XmlTree t = io::load_document(o.in);
  AnnotatedTree a = annotate(t, o.attr);
  fs::path schema = o.schema_out.empty() ? fs::path(o.out).replace_extension(".schema.json")
                                         : fs::path(o.schema_out);
  OutputGuard g;
  g.write(schema, io::schema_json(a.schema, a.attr_name));
  g.write(o.out, serialize_document(a.tree, SerializeOptions{true}));
  g.commit();
  return kExitOk;
}

std::vector<SimplePredicate> parsed_predicates(const Options& o) {
  std::vector<SimplePredicate> out;
  for (const auto& p : o.predicates) out.push_back(parse_predicate(p));
  return out;
}

int cmd_fragment(const Options& o, std::ostream& out) {
  require(!o.in.empty() && !o.out.empty(), "fragment needs --in and --out");
  const std::string& m = o.model;
  if (m == "horizontal") {
    require(!o.predicates.empty(), "horizontal model needs at least one --predicate");
  } else if (m == "range") {
    require(o.parts > 0, "range model needs --parts > 0");
  } else if (m == "vertical") {
    require(!o.path.empty(), "vertical model needs --path");
  } else if (m == "hybrid") {
    require(!o.predicates.empty() && !o.path.empty(),
            "hybrid model needs --predicate and --path");
  } else if (m == "size") {
    require(o.threshold > 0, "size model needs --threshold > 0");
  } else if (m == "simplex") {
    require(o.max_size > 0 && o.max_width > 0 && o.max_depth > 0,
            "simplex model needs --max-size, --max-width and --max-depth > 0");
  } else {
    throw UsageError("unknown --model \"" + m + "\"");
  }
  require(o.ref != o.attr, "--ref must differ from --attr");

  AnnotatedTree t = load_annotated(o);
  FragmentSet set;
  if (m == "horizontal") {
    set = horizontal_fragment(t, parsed_predicates(o));
  } else if (m == "range") {
    set = o.key.empty() ? horizontal_range_fragment(t, o.parts)
                        : value_range_fragment(t, parse_tag_path(o.key), o.parts);
  } else if (m == "vertical") {
    set = vertical_fragment(t, parse_selector(o.path), o.ref);
  } else if (m == "hybrid") {
    set = hybrid_fragment(t, parsed_predicates(o), parse_selector(o.path), o.ref);
  } else if (m == "size") {
    set = fragment_by_size(t, o.threshold);
  } else {
    set = simplex_fragment(t, SizeConstraints{o.max_size, o.max_width, o.max_depth}, o.ref);
  }

  const fs::path dir = o.out;
  OutputGuard g;
  for (std::size_t i = 0; i < set.fragments.size(); ++i) {
    g.write(dir / set.manifest.fragments[i].file,
            serialize_document(set.fragments[i].content, SerializeOptions{true}));
  }
  g.write(dir / "manifest.json", io::manifest_json(set.manifest));
  g.commit();
  out << set.fragments.size() << " fragments written to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_allocate(const Options& o, std::ostream& out) {
  require(o.nodes > 0, "allocate needs --nodes > 0");
  require(!o.out.empty(), "allocate needs --out");
  AllocationStrategy strategy;
  try {
    strategy = parse_strategy(o.strategy);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  LoadedSet s = load_set(o);
  Allocation a = allocate(s.manifest, o.nodes, strategy);
  io::DirectoryFragmentStore store(s.dir, s.manifest, s.allocation);

  const fs::path dir = o.out;
  OutputGuard g;
  for (const auto& e : s.manifest.fragments) {
    const XmlTree& t = store.get(e.id);
    g.write(io::node_dir(dir, a.placement.at(e.id)) / e.file,
            serialize_document(t, SerializeOptions{true}));
  }
  g.write(dir / "allocation.json", io::allocation_json(a));
  g.write(dir / "manifest.json", io::manifest_json(s.manifest));
  g.commit();
  out << s.manifest.fragments.size() << " fragments placed on " << o.nodes << " nodes\n";
  return kExitOk;
}

int cmd_query(const Options& o, std::ostream& out) {
  require(o.predicates.size() == 1, "query needs exactly one --predicate");
  SimplePredicate p = parse_predicate(o.predicates.front());
  LoadedSet s = load_set(o);
  io::DirectoryFragmentStore store(s.dir, s.manifest, s.allocation);
  Allocation a = s.allocation ? *s.allocation : single_node(s.manifest);
  RoutingResult r = route_query(p, s.manifest, a, store);
  emit(o, out, io::routing_json(r));
  return kExitOk;
}

int cmd_reassemble(const Options& o, std::ostream&) {
  require(!o.out.empty(), "reassemble needs --out");
  LoadedSet s = load_set(o);
  io::DirectoryFragmentStore store(s.dir, s.manifest, s.allocation);
  XmlTree t = reassemble(s.manifest, store);
  if (o.strip) strip_attribute(t.root, s.manifest.attr_name);
  OutputGuard g;
  g.write(o.out, serialize_document(t, SerializeOptions{true}));
  g.commit();
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  LoadedSet s = load_set(o);
  io::DirectoryFragmentStore store(s.dir, s.manifest, s.allocation);
  std::vector<Fragment> fragments;
  for (const auto& e : s.manifest.fragments) {
    fragments.push_back(Fragment{e.id, e.model, store.get(e.id), s.manifest.origin});
  }
  StructureHistogram h = fragment_stats(fragments);
  std::optional<double> skew;
  if (!o.predicates.empty()) {
    Allocation a = s.allocation ? *s.allocation : single_node(s.manifest);
    std::vector<RoutingResult> results;
    for (const auto& p : parsed_predicates(o)) {
      results.push_back(route_query(p, s.manifest, a, store));
    }
    skew = skew_metric(results, a);
  }
  emit(o, out, io::histogram_json(h, skew));
  return kExitOk;
}

int cmd_generate(const Options& o, std::ostream&) {
  require(o.records > 0, "generate needs --records > 0");
  require(!o.out.empty(), "generate needs --out");
  XmlTree t = generate_books(o.records, o.seed);
  OutputGuard g;
  g.write(o.out, serialize_document(t, SerializeOptions{true}));
  g.commit();
  return kExitOk;
}

int cmd_encode_fillers(const Options& o, std::ostream& out) {
  require(!o.in.empty() && !o.out.empty(), "encode-fillers needs --in and --out");
  std::vector<Address> cuts;
  for (const auto& c : o.cuts) cuts.push_back(parse_address(c));
  AnnotatedTree t = load_annotated(o);
  auto fillers = encode_fillers(t, cuts, o.hole_tag);
  const fs::path dir = fs::path(o.out) / "fillers";
  OutputGuard g;
  for (const auto& f : fillers) {
    g.write(dir / (f.id + ".xml"), serialize_document(f.content, SerializeOptions{true}));
  }
  g.commit();
  out << fillers.size() << " fillers written to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_decode_fillers(const Options& o, std::ostream&, std::ostream& err) {
  require(!o.in.empty() && !o.out.empty(), "decode-fillers needs --in and --out");
  fs::path dir = o.in;
  std::error_code ec;
  if (fs::is_directory(dir / "fillers", ec)) dir /= "fillers";
  auto fillers = io::load_fillers(dir);
  DecodeResult r = decode_fillers(fillers, o.hole_tag);
  for (const auto& id : r.orphans) err << "warning: orphan filler " << id << "\n";
  if (o.strip) strip_attribute(r.tree.root, o.attr);
  OutputGuard g;
  g.write(o.out, serialize_document(r.tree, SerializeOptions{true}));
  g.commit();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"XML document fragmentation, allocation and query routing", "xfrag"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--in", o.in, "Input file or directory");
  app.add_option("--out", o.out, "Output file or directory");
  app.add_option("--manifest", o.manifest, "Manifest of a fragment set");
  app.add_option("--seed", o.seed, "Generator seed");
  app.add_option("--attr", o.attr, "Label attribute name")->capture_default_str();

  auto* annotate_cmd = app.add_subcommand("annotate", "Label every element and emit the schema");
  annotate_cmd->add_option("--schema-out", o.schema_out, "Schema JSON path");

  auto* fragment_cmd = app.add_subcommand("fragment", "Fragment a document");
  fragment_cmd->add_option("--model", o.model, "horizontal|range|vertical|hybrid|size|simplex")
      ->required();
  fragment_cmd->add_option("--predicate", o.predicates, "Selection predicate (repeatable)");
  fragment_cmd->add_option("--parts", o.parts, "Number of range fragments");
  fragment_cmd->add_option("--key", o.key, "Leaf path to split value ranges on");
  fragment_cmd->add_option("--path", o.path, "Projection selector");
  fragment_cmd->add_option("--ref", o.ref, "Reference attribute name")->capture_default_str();
  fragment_cmd->add_option("--threshold", o.threshold, "Size threshold in bytes");
  fragment_cmd->add_option("--max-size", o.max_size, "SimpleX byte limit");
  fragment_cmd->add_option("--max-width", o.max_width, "SimpleX fanout limit");
  fragment_cmd->add_option("--max-depth", o.max_depth, "SimpleX depth limit");

  auto* allocate_cmd = app.add_subcommand("allocate", "Place fragments on nodes");
  allocate_cmd->add_option("--nodes", o.nodes, "Node count");
  allocate_cmd->add_option("--strategy", o.strategy, "round-robin|range")->capture_default_str();

  auto* query_cmd = app.add_subcommand("query", "Route a predicate query");
  query_cmd->add_option("--predicate", o.predicates, "Selection predicate");

  auto* reassemble_cmd = app.add_subcommand("reassemble", "Rebuild the original document");
  reassemble_cmd->add_flag("--strip", o.strip, "Remove labels from the output");

  auto* stats_cmd = app.add_subcommand("stats", "Fragment size histogram");
  stats_cmd->add_option("--predicate", o.predicates, "Queries for the skew metric (repeatable)");

  auto* generate_cmd = app.add_subcommand("generate", "Generate a books document");
  generate_cmd->add_option("--records", o.records, "Number of book records");

  auto* encode_cmd = app.add_subcommand("encode-fillers", "Cut a document into fillers");
  encode_cmd->add_option("--cut", o.cuts, "Address of a subtree to cut (repeatable)");
  encode_cmd->add_option("--hole-tag", o.hole_tag, "Hole element name")->capture_default_str();

  auto* decode_cmd = app.add_subcommand("decode-fillers", "Rebuild a document from fillers");
  decode_cmd->add_option("--hole-tag", o.hole_tag, "Hole element name")->capture_default_str();
  decode_cmd->add_flag("--strip", o.strip, "Remove labels from the output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (annotate_cmd->parsed()) return cmd_annotate(o, out);
    if (fragment_cmd->parsed()) return cmd_fragment(o, out);
    if (allocate_cmd->parsed()) return cmd_allocate(o, out);
    if (query_cmd->parsed()) return cmd_query(o, out);
    if (reassemble_cmd->parsed()) return cmd_reassemble(o, out);
    if (stats_cmd->parsed()) return cmd_stats(o, out);
    if (generate_cmd->parsed()) return cmd_generate(o, out);
    if (encode_cmd->parsed()) return cmd_encode_fillers(o, out);
    if (decode_cmd->parsed()) return cmd_decode_fillers(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << error_kind_name(e.kind()) << "]: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error [io]: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace xfrag
