#include <benchmark/benchmark.h>

#include <map>
#include <vector>

#include "xfrag/annotate.hpp"
#include "xfrag/generator.hpp"
#include "xfrag/kernels.hpp"

namespace {

using namespace xfrag;

const AnnotatedTree& books(std::size_t n) {
  static std::map<std::size_t, AnnotatedTree> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, annotate(generate_books(n, 7))).first;
  return it->second;
}

template <bool Parallel>
void BM_MatchRecords(benchmark::State& state) {
  const auto& t = books(static_cast<std::size_t>(state.range(0)));
  const SimplePredicate p = parse_predicate("/books/book/price <= 200");
  for (auto _ : state) {
    auto m = Parallel ? kernels::match_records(t.tree.root.children, p)
                      : kernels::serial::match_records(t.tree.root.children, p);
    benchmark::DoNotOptimize(m.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_AssignRecords(benchmark::State& state) {
  const auto& t = books(static_cast<std::size_t>(state.range(0)));
  const std::vector<SimplePredicate> ps = {parse_predicate("/books/book/price <= 200"),
                                           parse_predicate("/books/book/year > 2005"),
                                           parse_predicate("/books/book/category = Computing")};
  for (auto _ : state) {
    auto a = Parallel ? kernels::assign_records(t.tree.root.children, ps)
                      : kernels::serial::assign_records(t.tree.root.children, ps);
    benchmark::DoNotOptimize(a.first_match.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_MeasureSubtrees(benchmark::State& state) {
  const auto& t = books(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto m = Parallel ? kernels::measure_subtrees(t.tree.root.children)
                      : kernels::serial::measure_subtrees(t.tree.root.children);
    benchmark::DoNotOptimize(m.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_LabelRecords(benchmark::State& state) {
  const auto& t = books(static_cast<std::size_t>(state.range(0)));
  XmlTree work = t.tree;
  for (auto _ : state) {
    if (Parallel) {
      kernels::label_records(work.root.children, t.schema, "address");
    } else {
      kernels::serial::label_records(work.root.children, t.schema, "address");
    }
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_MatchRecords<false>)->Name("match_records/serial")->Arg(1000)->Arg(100000);
BENCHMARK(BM_MatchRecords<true>)->Name("match_records/omp")->Arg(1000)->Arg(100000);
BENCHMARK(BM_AssignRecords<false>)->Name("assign_records/serial")->Arg(1000)->Arg(100000);
BENCHMARK(BM_AssignRecords<true>)->Name("assign_records/omp")->Arg(1000)->Arg(100000);
BENCHMARK(BM_MeasureSubtrees<false>)->Name("measure_subtrees/serial")->Arg(1000)->Arg(100000);
BENCHMARK(BM_MeasureSubtrees<true>)->Name("measure_subtrees/omp")->Arg(1000)->Arg(100000);
BENCHMARK(BM_LabelRecords<false>)->Name("label_records/serial")->Arg(1000)->Arg(100000);
BENCHMARK(BM_LabelRecords<true>)->Name("label_records/omp")->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
