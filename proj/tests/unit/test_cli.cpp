#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "catalog.hpp"
#include "xfrag/cli.hpp"
#include "xfrag/io.hpp"
#include "xfrag/stats.hpp"

namespace xfrag {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("xfrag_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string p(const std::string& rel) const { return (dir_ / rel).string(); }
  std::string catalog_path() const { return std::string(XFRAG_TEST_DATA_DIR) + "/catalog.xml"; }

  fs::path dir_;
};

TEST_F(Cli, AnnotateWritesSchema) {
  CliRun r = cli({"annotate", "--in", catalog_path(), "--out", p("labeled.xml"), "--schema-out", p("s.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(io::read_file(p("s.json")));
  EXPECT_EQ(j["tags"].get<std::vector<std::string>>(), testing::catalog_tags());
  EXPECT_EQ(j["attr_name"], "address");
  XmlTree labeled = io::load_document(p("labeled.xml"));
  EXPECT_EQ(*labeled.root.children[0].children[7].attribute("address"), "1.8/10");

  CliRun again = cli({"annotate", "--in", p("labeled.xml"), "--out", p("g.xml")});
  EXPECT_EQ(again.code, kExitData);
  EXPECT_NE(again.err.find("labeling-conflict"), std::string::npos);
  EXPECT_FALSE(fs::exists(p("g.xml")));
  EXPECT_FALSE(fs::exists(p("g.schema.json")));
}

TEST_F(Cli, DefaultSchemaPath) {
  ASSERT_EQ(cli({"annotate", "--in", catalog_path(), "--out", p("a.xml")}).code, kExitOk);
  EXPECT_TRUE(fs::exists(p("a.schema.json")));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(cli({"annotate", "--in", p("missing.xml"), "--out", p("x.xml")}).code, kExitData);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"annotate"}).code, kExitUsage);
  EXPECT_EQ(cli({"fragment", "--in", catalog_path(), "--out", p("o"), "--model", "bogus"}).code,
            kExitUsage);
  CliRun bad = cli({"fragment", "--in", catalog_path(), "--out", p("o"), "--model", "size",
                 "--threshold", "0"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_FALSE(fs::exists(p("o/manifest.json")));
  io::write_file(p("broken.xml"), "<a><b></a>");
  EXPECT_EQ(cli({"annotate", "--in", p("broken.xml"), "--out", p("x.xml")}).code, kExitData);
}

TEST_F(Cli, GenerateIsDeterministic) {
  ASSERT_EQ(cli({"generate", "--records", "50", "--seed", "9", "--out", p("a.xml")}).code, kExitOk);
  ASSERT_EQ(cli({"generate", "--records", "50", "--seed", "9", "--out", p("b.xml")}).code, kExitOk);
  ASSERT_EQ(cli({"generate", "--records", "50", "--seed", "10", "--out", p("c.xml")}).code, kExitOk);
  EXPECT_EQ(io::read_file(p("a.xml")), io::read_file(p("b.xml")));
  EXPECT_NE(io::read_file(p("a.xml")), io::read_file(p("c.xml")));
  EXPECT_EQ(io::load_document(p("a.xml")).root.children.size(), 50u);
}

TEST_F(Cli, RangeSplitsEvenly) {
  ASSERT_EQ(cli({"generate", "--records", "5000", "--seed", "1", "--out", p("books.xml")}).code, kExitOk);
  CliRun r = cli({"fragment", "--in", p("books.xml"), "--out", p("frag"), "--model", "range", "--parts", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  Manifest m = io::parse_manifest_json(io::read_file(p("frag/manifest.json")));
  ASSERT_EQ(m.fragments.size(), 2u);
  for (const auto& e : m.fragments) {
    EXPECT_EQ(e.record_count, 2500u);
    EXPECT_EQ(io::load_document(p("frag/" + e.file)).root.children.size(), 2500u);
  }
}

TEST_F(Cli, VerticalPipeline) {
  CliRun f = cli({"fragment", "--in", catalog_path(), "--out", p("v"), "--model", "vertical", "--path",
               "/books/book/TableOfContent"});
  ASSERT_EQ(f.code, kExitOk) << f.err;
  EXPECT_TRUE(fs::exists(p("v/catalog.remainder.xml")));
  EXPECT_TRUE(fs::exists(p("v/catalog.projected.xml")));
  XmlTree proj = io::load_document(p("v/catalog.projected.xml"));
  EXPECT_EQ(proj.root.children.size(), 3u);
  ASSERT_EQ(cli({"allocate", "--manifest", p("v/manifest.json"), "--nodes", "2", "--out", p("c")}).code,
            kExitOk);
  EXPECT_TRUE(fs::exists(p("c/nodes/node-0/catalog.remainder.xml")));
  EXPECT_TRUE(fs::exists(p("c/nodes/node-1/catalog.projected.xml")));
  CliRun re = cli({"reassemble", "--manifest", p("c/manifest.json"), "--out", p("back.xml"), "--strip"});
  ASSERT_EQ(re.code, kExitOk) << re.err;
  EXPECT_TRUE(structural_equal(io::load_document(p("back.xml")), testing::catalog()));
  CliRun range = cli({"allocate", "--manifest", p("v/manifest.json"), "--nodes", "2", "--strategy",
                   "range", "--out", p("d")});
  EXPECT_EQ(range.code, kExitData);
  EXPECT_NE(range.err.find("strategy-mismatch"), std::string::npos);
}

TEST_F(Cli, QueryAndStats) {
  ASSERT_EQ(cli({"generate", "--records", "1000", "--seed", "2", "--out", p("books.xml")}).code, kExitOk);
  ASSERT_EQ(cli({"fragment", "--in", p("books.xml"), "--out", p("f"), "--model", "range", "--key",
                 "/books/book/price", "--parts", "4"})
                .code,
            kExitOk);
  ASSERT_EQ(cli({"allocate", "--manifest", p("f/manifest.json"), "--nodes", "4", "--strategy",
                 "range", "--out", p("c")})
                .code,
            kExitOk);
  CliRun q = cli({"query", "--manifest", p("c/manifest.json"), "--predicate", "/books/book/price < 0"});
  ASSERT_EQ(q.code, kExitOk) << q.err;
  EXPECT_EQ(q.out, "{\"nodes\":[],\"matches\":[],\"scanned\":0}\n");
  CliRun all = cli({"query", "--manifest", p("c/manifest.json"), "--predicate", "/books/book/year > 0"});
  auto j = nlohmann::json::parse(all.out);
  EXPECT_EQ(j["nodes"].size(), 4u);
  EXPECT_EQ(j["matches"].size(), 1000u);
  EXPECT_EQ(j["scanned"], 1000);
  EXPECT_EQ(j["matches"][0], "1/1");
  EXPECT_EQ(cli({"query", "--manifest", p("c/manifest.json"), "--predicate", "/books/book/isbn = 1"}).code,
            kExitData);
  EXPECT_EQ(cli({"query", "--manifest", p("c/manifest.json")}).code, kExitUsage);

  CliRun s = cli({"stats", "--manifest", p("c/manifest.json"), "--predicate", "/books/book/year > 0"});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  auto h = nlohmann::json::parse(s.out);
  std::vector<double> bytes;
  for (const auto& f : h["fragments"]) bytes.push_back(f["bytes"].get<double>());
  ASSERT_EQ(bytes.size(), 4u);
  double mean = 0;
  for (double b : bytes) mean += b / 4;
  double var = 0;
  for (double b : bytes) var += (b - mean) * (b - mean) / 4;
  EXPECT_NEAR(h["cv"].get<double>(), std::sqrt(var) / mean, 1e-9);
  EXPECT_NEAR(h["skew"].get<double>(), 0.0, 1e-12);
}

TEST_F(Cli, FillersRoundTrip) {
  CliRun e = cli({"encode-fillers", "--in", catalog_path(), "--out", p("enc"), "--cut", "1.8/10", "--cut",
               "3.3/4"});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_TRUE(fs::exists(p("enc/fillers/F0.xml")));
  EXPECT_TRUE(fs::exists(p("enc/fillers/F2.xml")));
  CliRun d = cli({"decode-fillers", "--in", p("enc"), "--out", p("dec.xml"), "--strip"});
  ASSERT_EQ(d.code, kExitOk) << d.err;
  EXPECT_TRUE(structural_equal(io::load_document(p("dec.xml")), testing::catalog()));
  fs::remove(p("enc/fillers/F1.xml"));
  CliRun missing = cli({"decode-fillers", "--in", p("enc/fillers"), "--out", p("dec2.xml")});
  EXPECT_EQ(missing.code, kExitData);
  EXPECT_NE(missing.err.find("F1"), std::string::npos);
  EXPECT_FALSE(fs::exists(p("dec2.xml")));
  EXPECT_EQ(cli({"encode-fillers", "--in", catalog_path(), "--out", p("x"), "--cut", "1..2/3"}).code,
            kExitData);
}

TEST_F(Cli, DirectoryStoreConcurrentReads) {
  ASSERT_EQ(cli({"generate", "--records", "400", "--seed", "5", "--out", p("b.xml")}).code, kExitOk);
  ASSERT_EQ(cli({"fragment", "--in", p("b.xml"), "--out", p("f"), "--model", "range", "--parts", "8"}).code,
            kExitOk);
  Manifest m = io::parse_manifest_json(io::read_file(p("f/manifest.json")));
  io::DirectoryFragmentStore store(p("f"), m);
  std::atomic<std::size_t> total{0};
  std::vector<std::thread> threads;
  for (int k = 0; k < 4; ++k) {
    threads.emplace_back([&] {
      for (const auto& e : m.fragments) total += store.get(e.id).root.children.size();
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(total.load(), 4u * 400u);
  EXPECT_FALSE(store.contains("nope"));
}

}  // namespace
}  // namespace xfrag
