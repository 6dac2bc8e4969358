#include "xfrag/generator.hpp"

#include <array>
#include <string>

#include "xfrag/rng.hpp"

namespace xfrag {

namespace {

constexpr std::array<const char*, 8> kSubjects = {
    "Computing", "Java",     "Android",   "Databases",
    "Networks",  "Security", "Compilers", "Operating Systems"};
constexpr std::array<const char*, 6> kTitleForms = {
    "Essentials of ", "Introduction to ", "Advanced ", "Practical ", "Core ", "Principles of "};
constexpr std::array<const char*, 8> kSurnames = {
    "O'Leary", "Murach", "Horstmann", "Cornell", "Wrightson", "Date", "Tanenbaum", "Knuth"};
constexpr std::array<const char*, 6> kGiven = {"Timothy", "Linda", "Joel", "Cay", "Gary", "Ada"};
constexpr std::array<const char*, 5> kPublishers = {
    "McGraw Hill", "Mike Murach and Associates", "Prentice Hall", "Addison-Wesley", "O'Reilly"};
constexpr std::array<const char*, 4> kCategories = {"Computing", "Programming", "Networking",
                                                    "Data"};
constexpr std::array<const char*, 6> kTopics = {
    "Getting started", "Data and types", "Control flow", "Working with files",
    "Concurrency", "Case study"};

template <std::size_t N>
const char* pick(Rng& rng, const std::array<const char*, N>& options) {
  return options[rng.index(N)];
}

ElementNode leaf(std::string tag, std::string text) {
  ElementNode e(std::move(tag));
  e.text = std::move(text);
  return e;
}

std::string isbn(Rng& rng) {
  std::string s = "978-";
  s += std::to_string(rng.uniform(0, 9));
  s += "-";
  for (int i = 0; i < 6; ++i) s += static_cast<char>('0' + rng.uniform(0, 9));
  s += "-";
  for (int i = 0; i < 2; ++i) s += static_cast<char>('0' + rng.uniform(0, 9));
  s += "-";
  s += static_cast<char>('0' + rng.uniform(0, 9));
  return s;
}

ElementNode book(Rng& rng) {
  ElementNode b("book");
  b.children.push_back(leaf("title", std::string(pick(rng, kTitleForms)) + pick(rng, kSubjects)));
  b.children.push_back(leaf("ISBN", isbn(rng)));
  ElementNode authors("authors");
  const auto n_authors = rng.uniform(1, 3);
  for (std::uint64_t i = 0; i < n_authors; ++i) {
    authors.children.push_back(
        leaf("author", std::string(pick(rng, kSurnames)) + ", " + pick(rng, kGiven)));
  }
  b.children.push_back(std::move(authors));
  b.children.push_back(leaf("publisher", pick(rng, kPublishers)));
  b.children.push_back(leaf("year", std::to_string(rng.uniform(1990, 2013))));
  b.children.push_back(leaf("category", pick(rng, kCategories)));
  b.children.push_back(leaf("price", std::to_string(rng.uniform(kMinPrice, kMaxPrice))));
  ElementNode toc("TableOfContent");
  const auto n_chapters = rng.uniform(1, 3);
  std::uint64_t number = 0;
  for (std::uint64_t i = 0; i < n_chapters; ++i) {
    number += rng.uniform(1, 5);
    ElementNode ch("Chapter");
    ch.children.push_back(leaf("Number", std::to_string(number)));
    ch.children.push_back(leaf("Topic", pick(rng, kTopics)));
    toc.children.push_back(std::move(ch));
  }
  b.children.push_back(std::move(toc));
  return b;
}

}  // namespace

XmlTree generate_books(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  XmlTree t{ElementNode("books"), "books"};
  t.root.children.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.root.children.push_back(book(rng));
  return t;
}

}  // namespace xfrag
