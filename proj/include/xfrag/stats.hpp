#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "xfrag/fragment.hpp"

namespace xfrag {

struct FragmentMeasure {
  std::string id;
  std::size_t bytes = 0;
  std::size_t elements = 0;
  std::size_t height = 0;
  std::size_t max_fanout = 0;
};

// Bucket [lo, hi) of byte sizes; hi = 2 * lo, except [0, 1).
struct HistogramBucket {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t count = 0;
};

struct StructureHistogram {
  std::vector<FragmentMeasure> fragments;
  std::vector<HistogramBucket> byte_buckets;  // non-empty buckets, ascending
  std::size_t min_bytes = 0;
  std::size_t max_bytes = 0;
  double mean_bytes = 0.0;
  double cv_bytes = 0.0;
};

// Population standard deviation over mean; 0 for an all-zero or empty input.
double coefficient_of_variation(std::span<const double> values);

StructureHistogram fragment_stats(std::span<const Fragment> fragments);

}  // namespace xfrag
