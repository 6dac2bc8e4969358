#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "xfrag/xml.hpp"

namespace xfrag::testing {

inline XmlTree catalog() {
  std::ifstream in(XFRAG_TEST_DATA_DIR "/catalog.xml");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), "catalog");
}

inline const std::vector<std::string>& catalog_tags() {
  static const std::vector<std::string> tags = {
      "books", "book",  "title", "ISBN",           "authors", "author", "publisher",
      "year",  "category", "price", "TableOfContent", "Chapter", "Number", "Topic"};
  return tags;
}

}  // namespace xfrag::testing
