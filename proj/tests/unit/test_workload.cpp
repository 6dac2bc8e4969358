#include <gtest/gtest.h>

#include "random_doc.hpp"
#include "xfrag/error.hpp"
#include "xfrag/workload.hpp"

namespace xfrag {
namespace {

using testing::error_of;

const TagSchema& schema() {
  static const TagSchema s({"books", "book", "title", "price", "year"});
  return s;
}

constexpr std::uint32_t kTitle = 2, kPrice = 3, kYear = 4;

QueryWorkload two_queries(double f1 = 10, double f2 = 5) {
  return {{{"q1", {kTitle, kPrice}, f1}, {"q2", {kPrice, kYear}, f2}}};
}

TEST(Eum, Rows) {
  auto m = build_eum(two_queries(), schema());
  ASSERT_EQ(m.use.size(), 2u);
  EXPECT_EQ(m.use[0], (std::vector<std::uint8_t>{0, 0, 1, 1, 0}));
  EXPECT_EQ(m.use[1], (std::vector<std::uint8_t>{0, 0, 0, 1, 1}));
  QueryWorkload same = {{{"a", {kTitle}, 1}, {"b", {kTitle}, 1}}};
  auto m2 = build_eum(same, schema());
  EXPECT_EQ(m2.use[0], m2.use[1]);
  EXPECT_EQ(error_of([] { build_eum({{{"q", {9}, 1}}}, schema()); }), ErrorKind::kUnknownElement);
  EXPECT_EQ(error_of([] { build_eum({{{"q", {kTitle}, 0}}}, schema()); }),
            ErrorKind::kInvalidArgument);
}

TEST(Eam, HandSummedExample) {
  auto a = build_eam(build_eum(two_queries(), schema()));
  EXPECT_EQ(a.at(kTitle, kPrice), 10.0);
  EXPECT_EQ(a.at(kPrice, kYear), 5.0);
  EXPECT_EQ(a.at(kTitle, kYear), 0.0);
  EXPECT_EQ(a.at(kPrice, kPrice), 15.0);
  EXPECT_EQ(a.at(kTitle, kTitle), 10.0);
}

TEST(Eam, SingleQueryIsDiagonalOnly) {
  auto a = build_eam(build_eum({{{"q", {kYear}, 3}}}, schema()));
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    for (std::uint32_t j = 0; j < a.size(); ++j) {
      EXPECT_EQ(a.at(i, j), i == j && i == kYear ? 3.0 : 0.0);
    }
  }
}

QueryWorkload random_workload(Rng& rng, std::size_t types) {
  QueryWorkload w;
  const std::size_t n = rng.uniform(1, 6);
  for (std::size_t q = 0; q < n; ++q) {
    WorkloadQuery wq{"q" + std::to_string(q), {}, static_cast<double>(rng.uniform(1, 20))};
    for (std::uint32_t e = 0; e < types; ++e) {
      if (rng.chance(1, 3)) wq.elements.push_back(e);
    }
    w.queries.push_back(wq);
  }
  return w;
}

TEST(EamProperty, SymmetricNonNegativeDiagonallyDominant) {
  Rng rng(41);
  TagSchema s({"a", "b", "c", "d", "e", "f", "g", "h"});
  for (int i = 0; i < 200; ++i) {
    auto a = build_eam(build_eum(random_workload(rng, s.size()), s));
    for (std::uint32_t x = 0; x < a.size(); ++x) {
      for (std::uint32_t y = 0; y < a.size(); ++y) {
        ASSERT_EQ(a.at(x, y), a.at(y, x));
        ASSERT_GE(a.at(x, y), 0.0);
        ASSERT_GE(a.at(x, x), a.at(x, y));
      }
    }
  }
}

// Within-group affinity of a partition given as group labels per child.
double intra(const ElementAffinityMatrix& a, const std::vector<std::uint32_t>& children,
             const std::vector<int>& group) {
  double s = 0;
  for (std::size_t i = 0; i < children.size(); ++i) {
    for (std::size_t j = i + 1; j < children.size(); ++j) {
      if (group[i] == group[j]) s += a.at(children[i], children[j]);
    }
  }
  return s;
}

TEST(Grouping, ExampleAgreesWithExhaustiveTwoPartitions) {
  auto a = build_eam(build_eum(two_queries(), schema()));
  std::vector<std::uint32_t> children = {kTitle, kPrice, kYear};
  auto groups = affinity_grouping(a, children, 2);
  EXPECT_EQ(groups, (std::vector<ElementGroup>{{kTitle, kPrice}, {kYear}}));

  double best = -1;
  int best_mask = -1;
  int ties = 0;
  for (int mask = 1; mask < (1 << children.size()) - 1; ++mask) {
    if (mask & 1) continue;  // each unordered partition once: child 0 in group 0
    std::vector<int> g(children.size());
    for (std::size_t i = 0; i < children.size(); ++i) g[i] = (mask >> i) & 1;
    double v = intra(a, children, g);
    if (v > best) {
      best = v;
      best_mask = mask;
      ties = 1;
    } else if (v == best) {
      ++ties;
    }
  }
  EXPECT_EQ(ties, 1);
  EXPECT_EQ(best_mask, 0b100);
}

TEST(Grouping, Degenerate) {
  auto a = build_eam(build_eum(two_queries(), schema()));
  std::vector<std::uint32_t> children = {kTitle, kPrice, kYear};
  EXPECT_EQ(affinity_grouping(a, children, 3),
            (std::vector<ElementGroup>{{kTitle}, {kPrice}, {kYear}}));
  EXPECT_EQ(affinity_grouping(a, children, 1), (std::vector<ElementGroup>{{kTitle, kPrice, kYear}}));
  EXPECT_EQ(error_of([&] { affinity_grouping(a, children, 4); }), ErrorKind::kInvalidK);
  EXPECT_EQ(error_of([&] { affinity_grouping(a, children, 0); }), ErrorKind::kInvalidK);
  EXPECT_EQ(error_of([&] { affinity_grouping(a, {kTitle, kTitle}, 1); }),
            ErrorKind::kInvalidArgument);
}

TEST(GroupingProperty, DeterministicAndScaleInvariant) {
  Rng rng(43);
  TagSchema s({"a", "b", "c", "d", "e", "f", "g", "h"});
  std::vector<std::uint32_t> children = {1, 2, 3, 4, 5, 6, 7};
  for (int i = 0; i < 200; ++i) {
    QueryWorkload w = random_workload(rng, s.size());
    auto a = build_eam(build_eum(w, s));
    const std::size_t k = rng.uniform(1, children.size());
    auto g = affinity_grouping(a, children, k);
    ASSERT_EQ(g.size(), k);
    ASSERT_EQ(affinity_grouping(a, children, k), g);
    QueryWorkload scaled = w;
    for (auto& q : scaled.queries) q.freq *= 4;
    ASSERT_EQ(affinity_grouping(build_eam(build_eum(scaled, s)), children, k), g);
  }
}

Manifest two_fragments() {
  Manifest m;
  m.schema = schema();
  FragmentEntry f1;
  f1.id = "f1";
  f1.element_types = {kTitle};
  FragmentEntry f2;
  f2.id = "f2";
  f2.element_types = {kPrice};
  m.fragments = {f1, f2};
  return m;
}

TEST(Cost, HandComputedExample) {
  Manifest m = two_fragments();
  Allocation a{2, {{"f1", 0}, {"f2", 1}}};
  QueryWorkload w = {{{"q", {kTitle, kPrice}, 2}}};
  std::map<std::string, std::size_t> bytes = {{"f1", 100}, {"f2", 300}};
  EXPECT_EQ(total_query_cost(m, a, w, {1, 1}, bytes), 1000.0);
  EXPECT_EQ(total_query_cost(m, a, w, {0, 0}, bytes), 0.0);
  Allocation one{1, {{"f1", 0}, {"f2", 0}}};
  EXPECT_EQ(total_query_cost(m, one, w, {1, 1}, bytes), 800.0);
  QueryWorkload untouched = {{{"q", {kYear}, 2}}};
  EXPECT_EQ(total_query_cost(m, a, untouched, {1, 1}, bytes), 0.0);
}

TEST(Cost, Errors) {
  Manifest m = two_fragments();
  QueryWorkload w = {{{"q", {kTitle}, 1}}};
  std::map<std::string, std::size_t> bytes = {{"f1", 100}, {"f2", 300}};
  Allocation partial{2, {{"f1", 0}}};
  EXPECT_EQ(error_of([&] { total_query_cost(m, partial, w, {1, 1}, bytes); }),
            ErrorKind::kAllocationIncomplete);
}

TEST(CostProperty, MonotoneInWeightsAndFrequency) {
  Rng rng(47);
  Manifest m;
  m.schema = TagSchema({"a", "b", "c", "d", "e", "f"});
  std::map<std::string, std::size_t> bytes;
  Allocation a{3, {}};
  for (int f = 0; f < 6; ++f) {
    FragmentEntry e;
    e.id = "f" + std::to_string(f);
    e.element_types = {static_cast<std::uint32_t>(f)};
    m.fragments.push_back(e);
    bytes[e.id] = rng.uniform(1, 1000);
    a.placement[e.id] = rng.index(3);
  }
  for (int i = 0; i < 200; ++i) {
    QueryWorkload w = random_workload(rng, 6);
    CostParams p{static_cast<double>(rng.uniform(0, 5)), static_cast<double>(rng.uniform(0, 5))};
    const double base = total_query_cost(m, a, w, p, bytes);
    ASSERT_GE(base, 0.0);
    ASSERT_GE(total_query_cost(m, a, w, {p.storage_weight + 1, p.transport_weight}, bytes), base);
    ASSERT_GE(total_query_cost(m, a, w, {p.storage_weight, p.transport_weight + 1}, bytes), base);
    QueryWorkload more = w;
    more.queries[rng.index(more.queries.size())].freq += 3;
    ASSERT_GE(total_query_cost(m, a, more, p, bytes), base);
  }
}

}  // namespace
}  // namespace xfrag
