#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xfrag/address.hpp"
#include "xfrag/annotate.hpp"
#include "xfrag/xml.hpp"

namespace xfrag {

inline constexpr std::string_view kDefaultHoleTag = "hole";

struct Filler {
  std::string id;  // F0 is the residual document
  XmlTree content;
};

// Cuts the subtrees at `cuts` into fillers F1..Fn numbered in document order;
// each is replaced in its parent filler by <hole_tag id="Fi"/>. Nested cuts
// are allowed.
std::vector<Filler> encode_fillers(const AnnotatedTree& t, std::span<const Address> cuts,
                                   std::string_view hole_tag = kDefaultHoleTag);

struct DecodeResult {
  XmlTree tree;
  std::vector<std::string> orphans;  // fillers no hole refers to
};

// Substitutes holes transitively starting from F0. Input order is irrelevant.
DecodeResult decode_fillers(std::span<const Filler> fillers,
                            std::string_view hole_tag = kDefaultHoleTag);

}  // namespace xfrag
