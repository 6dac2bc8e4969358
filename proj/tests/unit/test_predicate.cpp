#include <gtest/gtest.h>

#include "catalog.hpp"
#include "random_doc.hpp"
#include "xfrag/error.hpp"
#include "xfrag/predicate.hpp"

namespace xfrag {
namespace {

using testing::error_of;

TEST(PredicateParse, Forms) {
  auto p = parse_predicate("/books/book/price <= 200");
  EXPECT_EQ(p.path, (TagPath{"books", "book", "price"}));
  EXPECT_EQ(p.op, CompareOp::kLe);
  EXPECT_EQ(p.value, "200");
  auto q = parse_predicate("/books/book/publisher = \"McGraw Hill\"");
  EXPECT_EQ(q.op, CompareOp::kEq);
  EXPECT_EQ(q.value, "McGraw Hill");
  EXPECT_EQ(parse_predicate("/a/b/c≥5").op, CompareOp::kGe);
  EXPECT_EQ(parse_predicate("/a/b/c ≤ 5").op, CompareOp::kLe);
  EXPECT_EQ(parse_predicate("/a/b/c ≠ 5").op, CompareOp::kNe);
  EXPECT_EQ(parse_predicate("/a/b/c == 5").op, CompareOp::kEq);
  EXPECT_EQ(parse_predicate("/a/b/c != 5").op, CompareOp::kNe);
  EXPECT_EQ(parse_predicate("/a/b/c > 5").op, CompareOp::kGt);
  EXPECT_EQ(parse_predicate("/a/b/c<5").op, CompareOp::kLt);
  EXPECT_EQ(parse_predicate("/a/b = \"say \\\"hi\\\"\"").value, "say \"hi\"");
}

TEST(PredicateParse, Errors) {
  for (const char* bad : {"", "/a/b/c", "/a/b/c ~ 5", "a/b = 1", "/a = 1", "/a//b = 1",
                          "/a/b = \"open"}) {
    EXPECT_EQ(error_of([&] { parse_predicate(bad); }), ErrorKind::kPredicateSyntax) << bad;
  }
}

TEST(PredicateParse, FormatRoundTrip) {
  for (const char* s : {"/books/book/price <= 200", "/books/book/publisher = \"McGraw Hill\"",
                        "/a/b/c != \"\"", "/a/b > \" x\"", "/a/b = \"q\\\"\""}) {
    auto p = parse_predicate(s);
    EXPECT_EQ(parse_predicate(format_predicate(p)), p) << s;
  }
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    XmlTree t = testing::random_document(rng);
    auto p = testing::random_predicate(rng, t);
    ASSERT_EQ(parse_predicate(format_predicate(p)), p) << format_predicate(p);
  }
}

TEST(Selector, ParseAndValidate) {
  EXPECT_EQ(parse_selector("/books/book/TableOfContent").path,
            (TagPath{"books", "book", "TableOfContent"}));
  EXPECT_EQ(error_of([] { parse_selector("/books"); }), ErrorKind::kInvalidSelector);
  EXPECT_EQ(format_selector(parse_selector("/a/b")), "/a/b");
}

TEST(Decimal, Parse) {
  EXPECT_EQ(parse_decimal("98"), 98.0);
  EXPECT_EQ(parse_decimal("-3.5"), -3.5);
  EXPECT_EQ(parse_decimal("+2"), 2.0);
  EXPECT_FALSE(parse_decimal("1e3"));
  EXPECT_FALSE(parse_decimal(""));
  EXPECT_FALSE(parse_decimal("."));
  EXPECT_FALSE(parse_decimal("12a"));
  EXPECT_FALSE(parse_decimal(" 1"));
}

TEST(CompareValues, NumericWhenBothDecimal) {
  EXPECT_TRUE(compare_values("98", CompareOp::kLe, "200"));
  EXPECT_FALSE(compare_values("98", CompareOp::kGt, "200"));
  EXPECT_TRUE(compare_values("1.0", CompareOp::kEq, "1"));
  EXPECT_TRUE(compare_values("abc", CompareOp::kLt, "abd"));
  EXPECT_TRUE(compare_values("98", CompareOp::kGt, "200x"));
  EXPECT_TRUE(compare_values("B", CompareOp::kLt, "a"));
}

TEST(Evaluate, CatalogExamples) {
  XmlTree t = testing::catalog();
  const auto& books = t.root.children;
  auto le200 = parse_predicate("/books/book/price <= 200");
  EXPECT_TRUE(evaluate_predicate(books[0], le200));
  EXPECT_TRUE(evaluate_predicate(books[1], le200));
  EXPECT_FALSE(evaluate_predicate(books[2], le200));
  EXPECT_TRUE(evaluate_predicate(books[0], parse_predicate("/books/book/publisher = \"McGraw Hill\"")));
  EXPECT_FALSE(evaluate_predicate(books[1], parse_predicate("/books/book/publisher = \"McGraw Hill\"")));
}

TEST(Evaluate, ExistentialOverLeaves) {
  XmlTree t = testing::catalog();
  const auto& b3 = t.root.children[2];
  EXPECT_TRUE(evaluate_predicate(b3, parse_predicate("/books/book/authors/author = \"Cornell, Gary\"")));
  EXPECT_TRUE(evaluate_predicate(b3, parse_predicate("/books/book/TableOfContent/Chapter/Number > 10")));
  EXPECT_FALSE(evaluate_predicate(b3, parse_predicate("/books/book/TableOfContent/Chapter/Number > 14")));
}

TEST(Evaluate, AbsenceAndStructuralElements) {
  XmlTree t = testing::catalog();
  const auto& b1 = t.root.children[0];
  EXPECT_FALSE(evaluate_predicate(b1, parse_predicate("/books/book/nosuch = 1")));
  EXPECT_FALSE(evaluate_predicate(b1, parse_predicate("/books/book/authors != \"x\"")));
  EXPECT_FALSE(evaluate_predicate(b1, parse_predicate("/books/other/price = 98")));
  XmlTree r = parse_document("<r><b><v ref=\"1.1/2\"/></b></r>");
  auto p = parse_predicate("/r/b/v = \"\"");
  EXPECT_TRUE(evaluate_predicate(r.root.children[0], p));
  EXPECT_FALSE(evaluate_predicate(r.root.children[0], p, "ref"));
}

TEST(Evaluate, FromInnerNode) {
  XmlTree t = testing::catalog();
  const auto& toc = t.root.children[0].children[7];
  auto p = parse_predicate("/books/book/TableOfContent/Chapter/Number = 15");
  EXPECT_TRUE(evaluate_from(toc, p, 2));
  EXPECT_TRUE(evaluate_from(toc.children[2], p, 3));
  EXPECT_FALSE(evaluate_from(toc.children[0], p, 3));
  EXPECT_TRUE(evaluate_from(toc.children[2].children[0], p, 4));
}

}  // namespace
}  // namespace xfrag
