#include <benchmark/benchmark.h>

#include <random>

#include "immcalc/congruence.hpp"
#include "immcalc/dicyclic.hpp"
#include "immcalc/kirby.hpp"
#include "immcalc/plumbing.hpp"
#include "immcalc/smale.hpp"

using namespace immcalc;

static void BM_ChainDeterminant(benchmark::State& state) {
	SymForm f = intersection_form(a_family_expr(static_cast<int>(state.range(0)), 2));
	for (auto _ : state) benchmark::DoNotOptimize(determinant(f));
	state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ChainDeterminant)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_Signature(benchmark::State& state) {
	SymForm f = intersection_form(
	    boundary_sum(d_family_expr(static_cast<int>(state.range(0)), 2), simple_expr(Atom::Kind::SxS)));
	for (auto _ : state) benchmark::DoNotOptimize(signature(f));
	state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Signature)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_SmithNormalForm(benchmark::State& state) {
	SymForm f = intersection_form(d_family_expr(static_cast<int>(state.range(0)), 2));
	for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(f));
	state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_BlowdownCertificate(benchmark::State& state) {
	const long long n = state.range(0);
	for (auto _ : state) {
		IdentityReport rep = verify_identity(IdentityName::DBlowdown, n);
		benchmark::DoNotOptimize(rep.ok);
	}
}
BENCHMARK(BM_BlowdownCertificate)->DenseRange(2, 6);

static void BM_MoveWordSearch(benchmark::State& state) {
	SymForm lhs = SymForm::diagonal({1, 1, -1});
	SymForm rhs = SymForm::from_literal("[[0,1,0],[1,0,0],[0,0,1]]");
	for (auto _ : state) {
		auto r = congruent_by_moves(lhs, rhs);
		benchmark::DoNotOptimize(r.status);
	}
}
BENCHMARK(BM_MoveWordSearch);

static void BM_PipelineF(benchmark::State& state) {
	for (auto _ : state) benchmark::DoNotOptimize(pipeline_f(state.range(0)).omega.a);
}
BENCHMARK(BM_PipelineF)->Arg(8)->Arg(64);

static void BM_PipelineG(benchmark::State& state) {
	for (auto _ : state) benchmark::DoNotOptimize(pipeline_g(state.range(0)).omega.a);
}
BENCHMARK(BM_PipelineG)->Arg(8)->Arg(64);

static void BM_DicyclicEnumeration(benchmark::State& state) {
	const long long n = state.range(0);
	for (auto _ : state) benchmark::DoNotOptimize(dic_order(n));
}
BENCHMARK(BM_DicyclicEnumeration)->Arg(4)->Arg(12);

static void BM_ParsePrint(benchmark::State& state) {
	const std::string text = "P(D,7;2) + SxS + E(-3) + Estar(4) + CP2 + G{1:2,3:-1,5:2; 1-3,3-5}";
	for (auto _ : state) {
		FourManifoldExpr e = parse_expr(text);
		benchmark::DoNotOptimize(print_expr(e));
	}
}
BENCHMARK(BM_ParsePrint);

BENCHMARK_MAIN();
