#include <gtest/gtest.h>

#include <algorithm>

#include "catalog.hpp"
#include "oracles.hpp"
#include "random_doc.hpp"
#include "xfrag/error.hpp"
#include "xfrag/fillers.hpp"
#include "xfrag/fragment.hpp"

namespace xfrag {
namespace {

using testing::error_of;

std::size_t count_tag(const ElementNode& n, std::string_view tag) {
  std::size_t c = n.tag == tag ? 1 : 0;
  for (const auto& ch : n.children) c += count_tag(ch, tag);
  return c;
}

std::vector<Address> toc_cuts(const AnnotatedTree& t) {
  return select_by_pattern(t, selector_pattern(t.schema, parse_selector("/books/book/TableOfContent")));
}

TEST(Fillers, NoCutsYieldsOnlyResidual) {
  AnnotatedTree t = annotate(testing::catalog());
  auto fillers = encode_fillers(t, {});
  ASSERT_EQ(fillers.size(), 1u);
  EXPECT_EQ(fillers[0].id, "F0");
  EXPECT_TRUE(structural_equal(fillers[0].content, t.tree));
}

TEST(Fillers, CatalogTableOfContents) {
  AnnotatedTree t = annotate(testing::catalog());
  auto cuts = toc_cuts(t);
  ASSERT_EQ(cuts.size(), 3u);
  auto fillers = encode_fillers(t, cuts);
  ASSERT_EQ(fillers.size(), 4u);
  EXPECT_EQ(count_tag(fillers[0].content.root, "hole"), 3u);
  EXPECT_EQ(count_tag(fillers[0].content.root, "TableOfContent"), 0u);
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_EQ(fillers[i].id, "F" + std::to_string(i));
    EXPECT_EQ(fillers[i].content.root.tag, "TableOfContent");
    EXPECT_EQ(label_of(fillers[i].content.root, t.attr_name), cuts[i - 1]);
  }
  const ElementNode& hole = fillers[0].content.root.children[0].children[7];
  EXPECT_EQ(hole.tag, "hole");
  ASSERT_NE(hole.attribute("id"), nullptr);
  EXPECT_EQ(*hole.attribute("id"), "F1");
  auto back = decode_fillers(fillers);
  EXPECT_TRUE(structural_equal(back.tree, t.tree));
  EXPECT_TRUE(back.orphans.empty());
}

TEST(Fillers, NestedCuts) {
  AnnotatedTree t = annotate(testing::catalog());
  std::vector<Address> cuts = {parse_address("1.8/10"), parse_address("1.8.2/11")};
  auto fillers = encode_fillers(t, cuts);
  ASSERT_EQ(fillers.size(), 3u);
  EXPECT_EQ(fillers[1].content.root.tag, "TableOfContent");
  EXPECT_EQ(count_tag(fillers[1].content.root, "hole"), 1u);
  EXPECT_EQ(*fillers[1].content.root.children[1].attribute("id"), "F2");
  EXPECT_EQ(fillers[2].content.root.tag, "Chapter");
  EXPECT_TRUE(structural_equal(decode_fillers(fillers).tree, t.tree));
}

TEST(Fillers, MissingFillerNamesId) {
  AnnotatedTree t = annotate(testing::catalog());
  auto fillers = encode_fillers(t, toc_cuts(t));
  fillers.erase(fillers.begin() + 2);
  try {
    decode_fillers(fillers);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIncompleteStream);
    EXPECT_NE(std::string(e.what()).find("F2"), std::string::npos);
  }
  fillers.erase(fillers.begin());
  EXPECT_EQ(error_of([&] { decode_fillers(fillers); }), ErrorKind::kIncompleteStream);
}

TEST(Fillers, CycleAndDoubleReference) {
  std::vector<Filler> cyc = {{"F0", parse_document("<r><hole id=\"F1\"/></r>")},
                             {"F1", parse_document("<a><hole id=\"F2\"/></a>")},
                             {"F2", parse_document("<b><hole id=\"F1\"/></b>")}};
  EXPECT_EQ(error_of([&] { decode_fillers(cyc); }), ErrorKind::kCycle);
  std::vector<Filler> self = {{"F0", parse_document("<r><hole id=\"F0\"/></r>")}};
  EXPECT_EQ(error_of([&] { decode_fillers(self); }), ErrorKind::kCycle);
  std::vector<Filler> twice = {{"F0", parse_document("<r><hole id=\"F1\"/><hole id=\"F1\"/></r>")},
                               {"F1", parse_document("<a/>")}};
  EXPECT_EQ(error_of([&] { decode_fillers(twice); }), ErrorKind::kInvalidArgument);
  std::vector<Filler> dup = {{"F0", parse_document("<r/>")}, {"F0", parse_document("<r/>")}};
  EXPECT_EQ(error_of([&] { decode_fillers(dup); }), ErrorKind::kInvalidArgument);
  std::vector<Filler> noid = {{"F0", parse_document("<r><hole/></r>")}};
  EXPECT_EQ(error_of([&] { decode_fillers(noid); }), ErrorKind::kInvalidArgument);
}

TEST(Fillers, OrphansAreReported) {
  std::vector<Filler> f = {{"F3", parse_document("<z/>")},
                           {"F0", parse_document("<r><hole id=\"F1\"/></r>")},
                           {"F1", parse_document("<a/>")}};
  auto r = decode_fillers(f);
  EXPECT_EQ(serialize_document(r.tree), "<r><a/></r>");
  EXPECT_EQ(r.orphans, (std::vector<std::string>{"F3"}));
}

TEST(Fillers, EncodeErrors) {
  AnnotatedTree t = annotate(testing::catalog());
  std::vector<Address> root = {Address{}};
  EXPECT_EQ(error_of([&] { encode_fillers(t, root); }), ErrorKind::kInvalidCut);
  std::vector<Address> dup = {parse_address("1.8/10"), parse_address("1.8/10")};
  EXPECT_EQ(error_of([&] { encode_fillers(t, dup); }), ErrorKind::kDuplicateCut);
  std::vector<Address> missing = {parse_address("9.9/10")};
  EXPECT_EQ(error_of([&] { encode_fillers(t, missing); }), ErrorKind::kInvalidCut);
  std::vector<Address> wrong_type = {parse_address("1.8/3")};
  EXPECT_EQ(error_of([&] { encode_fillers(t, wrong_type); }), ErrorKind::kInvalidCut);
  AnnotatedTree holey = annotate(parse_document("<r><hole/></r>"));
  EXPECT_EQ(error_of([&] { encode_fillers(holey, {}); }), ErrorKind::kInvalidArgument);
  EXPECT_NO_THROW(encode_fillers(holey, {}, "gap"));
}

TEST(FillersProperty, AnyOrderDecodesToOriginal) {
  Rng rng(71);
  for (int i = 0; i < 300; ++i) {
    AnnotatedTree t = annotate(testing::random_document(rng));
    auto flat = testing::flatten(t.tree.root);
    std::vector<Address> cuts;
    for (std::size_t k = 1; k < flat.size(); ++k) {
      if (rng.chance(1, 6)) cuts.push_back(label_of(*flat[k].node, t.attr_name));
    }
    std::vector<Address> shuffled = cuts;
    for (std::size_t k = shuffled.size(); k > 1; --k) std::swap(shuffled[k - 1], shuffled[rng.index(k)]);
    auto fillers = encode_fillers(t, shuffled);
    ASSERT_EQ(fillers.size(), cuts.size() + 1);
    std::size_t holes = 0;
    for (const auto& f : fillers) holes += count_tag(f.content.root, "hole");
    ASSERT_EQ(holes, cuts.size());
    for (std::size_t k = fillers.size(); k > 1; --k) std::swap(fillers[k - 1], fillers[rng.index(k)]);
    auto back = decode_fillers(fillers);
    ASSERT_TRUE(structural_equal(back.tree, t.tree));
    ASSERT_TRUE(back.orphans.empty());
    std::reverse(fillers.begin(), fillers.end());
    ASSERT_TRUE(structural_equal(decode_fillers(fillers).tree, t.tree));
  }
}

}  // namespace
}  // namespace xfrag
