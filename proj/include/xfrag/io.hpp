#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "xfrag/allocation.hpp"
#include "xfrag/cluster.hpp"
#include "xfrag/fillers.hpp"
#include "xfrag/fragment.hpp"
#include "xfrag/stats.hpp"
#include "xfrag/workload.hpp"

namespace xfrag::io {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p);
// Writes through a temporary sibling and renames it into place.
void write_file(const fs::path& p, std::string_view content);

XmlTree load_document(const fs::path& p);
void save_document(const fs::path& p, const XmlTree& t);

std::string schema_json(const TagSchema& s, std::string_view attr_name);
TagSchema parse_schema_json(std::string_view text);

std::string manifest_json(const Manifest& m);
Manifest parse_manifest_json(std::string_view text);

std::string allocation_json(const Allocation& a);
Allocation parse_allocation_json(std::string_view text);

QueryWorkload parse_workload_json(std::string_view text, const TagSchema& schema);

std::string routing_json(const RoutingResult& r);
std::string histogram_json(const StructureHistogram& h, std::optional<double> skew = std::nullopt);

// Node directory for fragment placement: <root>/nodes/node-<k>.
fs::path node_dir(const fs::path& root, std::size_t node);

// Reads fragment files on demand from <root>/nodes/node-<k>/ when an
// allocation is given, from <root>/ otherwise.
class DirectoryFragmentStore : public FragmentStore {
 public:
  DirectoryFragmentStore(fs::path root, const Manifest& m,
                         std::optional<Allocation> allocation = std::nullopt);

  bool contains(std::string_view id) const override;
  const XmlTree& get(std::string_view id) const override;

 private:
  std::optional<fs::path> locate(std::string_view id) const;

  fs::path root_;
  const Manifest& manifest_;
  std::optional<Allocation> allocation_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::unique_ptr<XmlTree>, std::less<>> cache_;
};

void save_fillers(const fs::path& dir, const std::vector<Filler>& fillers);
// Every F<k>.xml in `dir`, sorted by file name.
std::vector<Filler> load_fillers(const fs::path& dir);

}  // namespace xfrag::io
