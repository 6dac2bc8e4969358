#pragma once

#include <cstddef>
#include <cstdint>

#include "xfrag/xml.hpp"

namespace xfrag {

inline constexpr std::uint64_t kMinPrice = 10;
inline constexpr std::uint64_t kMaxPrice = 999;

// Books catalogue: each <book> holds title,
// ISBN, authors (1-3 author), publisher, year, category, an integer price
// uniform over [kMinPrice, kMaxPrice], and a TableOfContent of 1-3 Chapter
// (Number, Topic). Identical (n, seed) give identical documents.
XmlTree generate_books(std::size_t n, std::uint64_t seed);

}  // namespace xfrag
