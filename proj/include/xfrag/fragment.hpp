#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xfrag/annotate.hpp"
#include "xfrag/predicate.hpp"
#include "xfrag/xml.hpp"

namespace xfrag {

inline constexpr std::string_view kDefaultRefAttr = "ref";

enum class FragmentModel {
  kHorizontal,
  kVerticalProjected,
  kVerticalRemainder,
  kSize,
  kHybrid,
};

std::string_view model_name(FragmentModel m);
FragmentModel parse_model_name(std::string_view s);

// What the fragment's content root is.
//   records:   a copy of the document root holding whole record subtrees
//   projected: a synthesized root whose children are subtrees cut at `anchor`
//   subtree:   the content root is itself a cut element located at `anchor`
//   skeleton:  a copy of the document root holding the ancestors of cuts
enum class FragmentRole { kRecords, kProjected, kSubtree, kSkeleton };

std::string_view role_name(FragmentRole r);
FragmentRole parse_role_name(std::string_view s);

struct Fragment {
  std::string id;
  FragmentModel model = FragmentModel::kHorizontal;
  XmlTree content;
  std::string origin;
};

struct OrdinalRange {
  std::uint32_t lo = 0;  // inclusive
  std::uint32_t hi = 0;  // inclusive; lo > hi denotes an empty range

  bool operator==(const OrdinalRange&) const = default;
};

// Summary of the leaf values a fragment holds at one path: the closed hull
// [lo, hi] under numeric order when every value is a decimal, byte order when
// none is. Mixed fragments carry no hull. Used for pruning.
struct KeyHull {
  std::string path;
  std::size_t leaves = 0;
  bool numeric = true;
  bool mixed = false;
  bool single_valued = true;
  std::string lo;
  std::string hi;

  bool operator==(const KeyHull&) const = default;
};

struct FragmentEntry {
  std::string id;
  std::string file;
  FragmentModel model = FragmentModel::kHorizontal;
  FragmentRole role = FragmentRole::kRecords;
  std::optional<std::string> predicate;
  std::optional<std::string> selector;
  std::optional<OrdinalRange> ordinal_range;
  std::optional<KeyHull> key;
  // Position in a range split; range allocation maps it to a node.
  std::optional<std::size_t> range_index;
  std::optional<std::size_t> bucket;
  bool flagged = false;
  std::string anchor;
  std::vector<std::uint32_t> element_types;
  std::size_t record_count = 0;
  std::size_t payload_bytes = 0;

  bool operator==(const FragmentEntry&) const = default;
};

struct ManifestLink {
  std::string remainder_address;  // element that carries the ref attribute
  std::string ref_value;          // address of the cut subtree root
  std::string fragment_id;        // fragment holding that subtree

  bool operator==(const ManifestLink&) const = default;
};

struct Manifest {
  std::string origin;
  std::string attr_name = std::string(kDefaultLabelAttr);
  std::string ref_attr = std::string(kDefaultRefAttr);
  TagSchema schema;
  std::string model;
  std::map<std::string, std::string> params;
  std::vector<FragmentEntry> fragments;
  std::vector<ManifestLink> links;
  // Records that satisfied more than one horizontal predicate.
  std::vector<std::string> overlaps;

  const FragmentEntry* find(std::string_view id) const;
};

struct FragmentSet {
  std::vector<Fragment> fragments;
  Manifest manifest;

  const Fragment* find(std::string_view id) const;
};

std::string fragment_file_name(std::string_view origin, std::string_view id);

// Horizontal: fragment i holds the records satisfying predicate i (lowest
// index wins on overlap, reported in manifest.overlaps); the rest, including
// root children that are not records, goes to fragment "rest".
FragmentSet horizontal_fragment(const AnnotatedTree& t,
                                const std::vector<SimplePredicate>& predicates);

// Splits root children by leading ordinal into n_parts contiguous ranges
// whose sizes differ by at most one.
FragmentSet horizontal_range_fragment(const AnnotatedTree& t, std::size_t n_parts);

// Splits records by the value at `key` into n_parts equal-count ranges
// (sizes differ by at most one) in (value, ordinal) order. Records without
// the key, and non-record root children, go to fragment "rest".
FragmentSet value_range_fragment(const AnnotatedTree& t, const TagPath& key,
                                 std::size_t n_parts);

// Moves every subtree at `selector` into a projected fragment; each parent
// left behind gets `ref_attr` listing the removed subtrees' addresses.
FragmentSet vertical_fragment(const AnnotatedTree& t, const PathSelector& selector,
                              std::string_view ref_attr = kDefaultRefAttr);

// Horizontal split first, then a vertical split inside each piece.
FragmentSet hybrid_fragment(const AnnotatedTree& t, const std::vector<SimplePredicate>& predicates,
                            const PathSelector& selector,
                            std::string_view ref_attr = kDefaultRefAttr);

// Greedy scan over root children, grouping consecutive siblings while the
// running byte total stays within threshold. Oversize children are flagged.
FragmentSet fragment_by_size(const AnnotatedTree& t, std::size_t threshold);

struct SizeConstraints {
  std::size_t max_size = 0;   // bytes
  std::size_t max_width = 0;  // largest fanout inside the subtree
  std::size_t max_depth = 0;  // levels, a lone element is 1
};

FragmentSet simplex_fragment(const AnnotatedTree& t, const SizeConstraints& c,
                             std::string_view ref_attr = kDefaultRefAttr);

// Label pattern for a selector, e.g. /books/book/TableOfContent -> "d.d/10".
std::string selector_pattern(const TagSchema& schema, const PathSelector& selector);

// Addresses of all elements whose label matches `pattern`, document order.
std::vector<Address> select_by_pattern(const AnnotatedTree& t, std::string_view pattern);

}  // namespace xfrag
