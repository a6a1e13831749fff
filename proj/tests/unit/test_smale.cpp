#include <doctest.h>

#include "immcalc/smale.hpp"
#include "oracles.hpp"

using namespace immcalc;

TEST_CASE("defect and invariant formulas on pinned values") {
	CHECK(hirzebruch_defect(0, 0) == 0);
	for (long long n = 1; n <= 8; ++n) {
		CHECK(hirzebruch_defect(n * n - 1, -(n * n - 1)) == -2 * n * n + 2);
		CHECK(hirzebruch_defect(4 * n * n + 8 * n - 1, -4 * n * n + 1) == -8 * n * n - 24 * n + 2);
	}
	CHECK(smale_invariant(3, 0) == SmaleInvariant{2, -1});
	CHECK(smale_invariant(1, 0) == SmaleInvariant{0, 0});
	CHECK(smale_invariant(15, -16) == SmaleInvariant{14, -3});  // n = 3 in the chain family
}

TEST_CASE("divisibility failures signal a ledger bug") {
	CHECK_THROWS_AS(smale_invariant(2, 1), LedgerError);
	CHECK_THROWS_WITH_AS(smale_invariant(2, 1), doctest::Contains("inconsistent ledger"), LedgerError);
}

TEST_CASE("normal degree bookkeeping") {
	for (long long n : {1, 2, 5, 9}) {
		FourManifoldExpr base =
		    boundary_sum(a_family_expr(static_cast<int>(n) - 1, 2), simple_expr(Atom::Kind::SxS));
		CHECK(ndeg_immersed(base) == n + 2);
		FourManifoldExpr dbase =
		    boundary_sum(d_family_expr(static_cast<int>(n) + 2, 2), simple_expr(Atom::Kind::SxS));
		CHECK(ndeg_immersed(dbase) == n + 5);
	}
	CHECK(ndeg_immersed(simple_expr(Atom::Kind::SxS)) == 3);
	CHECK(ndeg_composite(4, 7) == 28);
	CHECK(ndeg_composite(1, 9) == 9);
	CHECK_THROWS_AS(ndeg_composite(0, 3), std::invalid_argument);
}

TEST_CASE("rank-2-point counts") {
	CHECK(sigma2_thom(0) == 0);
	CHECK(sigma2_thom(1) == -3);
	CHECK(sigma2_thom(-2) == 6);
	CHECK(sigma2_power_branch(1) == 0);
	for (long long n : {1, 2, 4}) {
		CHECK(sigma2_power_branch(n) == -(n * n - 1));
		CHECK(sigma2_power_branch(2 * n) == -(4 * n * n - 1));
	}
	CHECK_THROWS_AS(sigma2_power_branch(0), std::invalid_argument);

	BranchDisjointness ok{true, "test"};
	CHECK(sigma2_compose(4, 0, -15, ok) == -15);
	CHECK(sigma2_compose(1, 7, 0, ok) == 7);
	CHECK(sigma2_compose(9, 0, 0, ok) == 0);
	for (long long n : {1, 3}) CHECK(sigma2_compose(2 * n, 0, -(4 * n * n - 1), ok) == -4 * n * n + 1);
	CHECK_THROWS_AS(sigma2_compose(2, 1, 1, BranchDisjointness{}), LedgerError);
}

TEST_CASE("group structure of the invariant") {
	CHECK(connected_sum({2, -1}, {-2, 1}) == SmaleInvariant{0, 0});
	CHECK(scalar(5, {-2, 1}) == SmaleInvariant{-10, 5});
	CHECK(connected_sum({7, 3}, {0, 0}) == SmaleInvariant{7, 3});
	CHECK(modification_correction({14, -3}, 3, {-2, 1}) == SmaleInvariant{8, 0});
	CHECK(modification_correction({7, 7}, 0, {100, 100}) == SmaleInvariant{7, 7});
}

TEST_CASE("bordism classes and generators") {
	CHECK(bordism_class({35, 0}) == 11);
	CHECK(is_generator(11));
	CHECK(bordism_class({2, -1}) == 0);
	CHECK(!is_generator(0));
	CHECK(bordism_class({71, 0}) == 23);
	CHECK(is_generator(23));
	CHECK(bordism_class({-1, 0}) == 23);  // nonnegative residue
}

TEST_CASE("omega of the stabilizing immersion") { CHECK(omega_t() == SmaleInvariant{2, -1}); }

TEST_CASE("the two family pipelines reproduce the closed forms") {
	CHECK(pipeline_f(6).omega == SmaleInvariant{35, 0});
	CHECK(pipeline_g(1).omega == SmaleInvariant{15, 0});
	CHECK(pipeline_f(1).omega == SmaleInvariant{0, 0});
	for (long long n = 1; n <= 16; ++n) {
		CAPTURE(n);
		FamilyReport f = pipeline_f(n);
		CHECK(f.omega == SmaleInvariant{n * n - 1, 0});
		CHECK(f.ndeg == n * (n + 2));
		CHECK(f.hdef == -2 * n * n + 2);
		CHECK(f.omega_modified == SmaleInvariant{n * n + 2 * n - 1, -n});
		FamilyReport g = pipeline_g(n);
		CHECK(g.omega == SmaleInvariant{4 * n * n + 12 * n - 1, 0});
		CHECK(g.ndeg == 4 * n * (n + 5));
		CHECK(g.hdef == -8 * n * n - 24 * n + 2);
		CHECK(g.omega_modified == SmaleInvariant{4 * n * n + 20 * n - 1, -4 * n});
	}
	CHECK_THROWS_AS(pipeline_f(0), std::invalid_argument);
	CHECK_THROWS_AS(pipeline_g(-2), std::invalid_argument);
}

TEST_CASE("ledger sigma matches the form signature of the declared filling") {
	for (long long n = 1; n <= 6; ++n) {
		CAPTURE(n);
		FamilyReport f = pipeline_f(n);
		CHECK(f.sigma == signature(intersection_form(f.ledger.source)));
		FamilyReport g = pipeline_g(n);
		CHECK(g.sigma == signature(intersection_form(g.ledger.source)));
	}
}

TEST_CASE("ledger sigma2 terms come from the allowed menu and add up") {
	for (long long n : {1, 2, 5, 9}) {
		CAPTURE(n);
		FamilyReport f = pipeline_f(n);
		REQUIRE(!f.ledger.sigma2_terms.empty());
		for (const auto& term : f.ledger.sigma2_terms) CHECK(sigma2_contribution_consistent(term));
		CHECK(f.ledger.sigma2_terms.front().kind == Sigma2Contribution::Kind::PowerBranch);
		CHECK(f.ledger.sigma2_terms.front().value == f.sigma2);

		FamilyReport g = pipeline_g(n);
		REQUIRE(g.ledger.sigma2_terms.size() == 3);
		for (const auto& term : g.ledger.sigma2_terms) CHECK(sigma2_contribution_consistent(term));
		const auto& outer = g.ledger.sigma2_terms[0];
		const auto& inner = g.ledger.sigma2_terms[1];
		const auto& composed = g.ledger.sigma2_terms[2];
		CHECK(outer.kind == Sigma2Contribution::Kind::Z2Model);
		CHECK(inner.kind == Sigma2Contribution::Kind::PowerBranch);
		CHECK(composed.kind == Sigma2Contribution::Kind::Compose);
		CHECK(composed.value == composed.parameter * outer.value + inner.value);
		CHECK(composed.value == g.sigma2);
	}
}

TEST_CASE("pipeline traces document every step") {
	FamilyReport f = pipeline_f(3);
	CHECK(f.ledger.trace.size() >= 6);
	bool has_sigma = false, has_bordism = false;
	for (const auto& line : f.ledger.trace) {
		if (line.find("sigma =") != std::string::npos) has_sigma = true;
		if (line.find("bordism") != std::string::npos) has_bordism = true;
	}
	CHECK(has_sigma);
	CHECK(has_bordism);
}

TEST_CASE("generator predicates follow the divisibility pattern") {
	for (long long n = 1; n <= 24; ++n) {
		CAPTURE(n);
		CHECK(pipeline_f(n).generator == (n % 6 == 0));
		CHECK(pipeline_g(n).generator == (n % 3 == 0));
	}
}
