#include "xfrag/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "xfrag/error.hpp"
#include "xfrag/kernels.hpp"

namespace xfrag {

double coefficient_of_variation(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (mean == 0.0) return 0.0;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return std::sqrt(sq / n) / mean;
}

StructureHistogram fragment_stats(std::span<const Fragment> fragments) {
  if (fragments.empty()) {
    throw Error(ErrorKind::kEmptyInput, "fragment_stats needs at least one fragment");
  }
  std::vector<ElementNode> roots;
  roots.reserve(fragments.size());
  for (const auto& f : fragments) roots.push_back(f.content.root);
  auto measures = kernels::measure_subtrees(roots);

  StructureHistogram h;
  std::map<std::size_t, std::size_t> buckets;  // lo -> count
  std::vector<double> bytes;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    const auto& m = measures[i];
    h.fragments.push_back({fragments[i].id, m.bytes, m.elements, m.height, m.max_fanout});
    bytes.push_back(static_cast<double>(m.bytes));
    std::size_t lo = m.bytes == 0 ? 0 : std::bit_floor(m.bytes);
    ++buckets[lo];
  }
  for (auto [lo, count] : buckets) {
    h.byte_buckets.push_back({lo, lo == 0 ? 1 : lo * 2, count});
  }
  auto [mn, mx] = std::minmax_element(h.fragments.begin(), h.fragments.end(),
                                      [](const auto& a, const auto& b) { return a.bytes < b.bytes; });
  h.min_bytes = mn->bytes;
  h.max_bytes = mx->bytes;
  double sum = 0.0;
  for (double b : bytes) sum += b;
  h.mean_bytes = sum / static_cast<double>(bytes.size());
  h.cv_bytes = coefficient_of_variation(bytes);
  return h;
}

}  // namespace xfrag
