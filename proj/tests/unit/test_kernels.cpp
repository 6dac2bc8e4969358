#include <gtest/gtest.h>

#include "random_doc.hpp"
#include "xfrag/generator.hpp"
#include "xfrag/kernels.hpp"

namespace xfrag {
namespace {

std::vector<std::size_t> sizes() { return {0, 1, 7, 511, 512, 513, 3000}; }

TEST(Kernels, ThreadCountPositive) { EXPECT_GE(kernels::thread_count(), 1); }

TEST(Kernels, LabelRecordsMatchesSerial) {
  for (std::size_t n : sizes()) {
    XmlTree doc = generate_books(n, n + 1);
    AnnotatedTree t = annotate(doc);
    XmlTree a = doc, b = doc;
    kernels::label_records(a.root.children, t.schema, "address");
    kernels::serial::label_records(b.root.children, t.schema, "address");
    ASSERT_TRUE(structural_equal(a.root, b.root)) << n;
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_TRUE(structural_equal(a.root.children[i], t.tree.root.children[i])) << n << " " << i;
    }
  }
}

TEST(Kernels, MatchAndAssignMatchSerial) {
  std::vector<SimplePredicate> ps = {parse_predicate("/books/book/price < 300"),
                                     parse_predicate("/books/book/year = 2001"),
                                     parse_predicate("/books/book/price >= 250"),
                                     parse_predicate("/books/book/TableOfContent/Chapter/Number = 2")};
  for (std::size_t n : sizes()) {
    AnnotatedTree t = annotate(generate_books(n, 3 * n + 5));
    const auto& recs = t.tree.root.children;
    for (const auto& p : ps) {
      auto par = kernels::match_records(recs, p);
      ASSERT_EQ(par, kernels::serial::match_records(recs, p));
      ASSERT_EQ(par.size(), n);
      for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(par[i] != 0, evaluate_predicate(recs[i], p));
    }
    auto pa = kernels::assign_records(recs, ps);
    auto sa = kernels::serial::assign_records(recs, ps);
    ASSERT_EQ(pa.first_match, sa.first_match);
    ASSERT_EQ(pa.overlapping, sa.overlapping);
  }
}

TEST(Kernels, MeasuresMatchSerial) {
  Rng rng(83);
  for (std::size_t n : sizes()) {
    XmlTree doc = generate_books(n, n);
    auto pb = kernels::subtree_bytes(doc.root.children);
    ASSERT_EQ(pb, kernels::serial::subtree_bytes(doc.root.children));
    auto pm = kernels::measure_subtrees(doc.root.children);
    ASSERT_EQ(pm, kernels::serial::measure_subtrees(doc.root.children));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = doc.root.children[i];
      ASSERT_EQ(pb[i], serialize_element(c).size());
      ASSERT_EQ(pm[i].bytes, pb[i]);
      ASSERT_EQ(pm[i].elements, element_count(c));
      ASSERT_EQ(pm[i].height, subtree_height(c));
      ASSERT_EQ(pm[i].max_fanout, max_fanout(c));
    }
  }
  for (int i = 0; i < 100; ++i) {
    XmlTree d = testing::random_document(rng);
    ASSERT_EQ(kernels::measure_subtrees(d.root.children),
              kernels::serial::measure_subtrees(d.root.children));
  }
}

}  // namespace
}  // namespace xfrag
