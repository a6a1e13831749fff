#include <doctest.h>

#include <random>

#include "immcalc/plumbing.hpp"
#include "oracles.hpp"

using namespace immcalc;

TEST_CASE("grammar instances from the family shorthands") {
	FourManifoldExpr e = parse_expr("P(A,4;2) + SxS");
	REQUIRE(e.atoms.size() == 2);
	CHECK(e.atoms[0].graph == PlumbingGraph::a_chain(4, 2));
	CHECK(e.atoms[1].kind == Atom::Kind::SxS);

	FourManifoldExpr e2 = parse_expr("E(-3) + CP2 + CP2");
	REQUIRE(e2.atoms.size() == 3);
	CHECK(e2.atoms[0].m == -3);

	FourManifoldExpr e3 = parse_expr("P(D,7;2)");
	CHECK(e3.atoms[0].graph == PlumbingGraph::d_tree(7, 2));
}

TEST_CASE("graph literals accept arbitrary ids and survive the round trip") {
	FourManifoldExpr e = parse_expr("G{5:2,9:-1,7:2; 5-7, 7-9}");
	REQUIRE(e.atoms.size() == 1);
	CHECK(e.atoms[0].graph.vertices.size() == 3);
	CHECK(e.atoms[0].graph.edges == std::vector<std::pair<long long, long long>>{{5, 7}, {7, 9}});
	CHECK(parse_expr(print_expr(e)) == e);
	// uniform-weight canonical labels print as shorthand
	CHECK(print_expr(parse_expr("G{1:2,2:2,3:2; 1-2,2-3}")) == "P(A,3;2)");
	CHECK(print_expr(parse_expr("G{1:2,2:2,3:2,4:2; 1-3,2-3,3-4}")) == "P(D,4;2)");
	// single-vertex graph literal keeps its literal form, E(w) is a distinct atom
	CHECK(print_expr(parse_expr("G{1:3;}")) == "P(A,1;3)");
}

TEST_CASE("parse errors carry positions and name the offence") {
	CHECK_THROWS_WITH_AS(parse_expr("P(A,0;2)"), doctest::Contains("family size must be positive"), ExprParseError);
	CHECK_THROWS_WITH_AS(parse_expr("P(Q,3;2)"), doctest::Contains("unknown plumbing family"), ExprParseError);
	CHECK_THROWS_WITH_AS(parse_expr("P(D,2;2)"), doctest::Contains("D-family size"), ExprParseError);
	CHECK_THROWS_WITH_AS(parse_expr("Estar(0)"), doctest::Contains("positive"), ExprParseError);
	CHECK_THROWS_WITH_AS(parse_expr("Foo"), doctest::Contains("unknown atom"), ExprParseError);
	CHECK_THROWS_WITH_AS(parse_expr("G{1:2,1:3;}"), doctest::Contains("duplicate"), ExprParseError);
	CHECK_THROWS_WITH_AS(parse_expr("G{1:2,2:2; 1-1}"), doctest::Contains("loop"), ExprParseError);
	CHECK_THROWS_WITH_AS(parse_expr("G{1:2,2:2; 1-2,2-1}"), doctest::Contains("multi-edge"), ExprParseError);
	CHECK_THROWS_WITH_AS(parse_expr("SxS + "), doctest::Contains("unknown atom"), ExprParseError);
	CHECK_THROWS_WITH_AS(parse_expr("E(2"), doctest::Contains("expected ')'"), ExprParseError);

	try {
		parse_expr("SxS +\n  P(A,0;2)");
		FAIL("expected a parse error");
	} catch (const ExprParseError& err) {
		CHECK(err.line == 2);
		CHECK(err.column > 1);
	}
}

TEST_CASE("intersection forms of the atoms") {
	CHECK(intersection_form(parse_expr("P(A,2;2)")).literal() == "[[2,1],[1,2]]");
	CHECK(intersection_form(parse_expr("Estar(3)")).literal() == "[[0,2],[2,-5]]");
	CHECK(intersection_form(parse_expr("SxS")).literal() == "[[0,1],[1,0]]");
	CHECK(intersection_form(parse_expr("SxtS")).literal() == "[[0,1],[1,1]]");
	CHECK(intersection_form(parse_expr("CP2")).literal() == "[[1]]");
	CHECK(intersection_form(parse_expr("CP2bar")).literal() == "[[-1]]");
	CHECK(intersection_form(parse_expr("D4")).size() == 0);
	CHECK(intersection_form(parse_expr("E(-3)")).literal() == "[[-3]]");
	// boundary connected sum is the direct sum
	CHECK(intersection_form(parse_expr("E(2) + SxS")).literal() == "[[2,0,0],[0,0,1],[0,1,0]]");
}

TEST_CASE("euler characteristic is rank plus one, additively") {
	CHECK(euler_characteristic(parse_expr("P(A,4;2) + SxS")) == 7);
	CHECK(euler_characteristic(parse_expr("D4")) == 1);
	CHECK(euler_characteristic(parse_expr("P(D,7;2) + SxS")) == 10);

	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 50; ++trial) {
		FourManifoldExpr a = testing::random_expr(rng);
		FourManifoldExpr b = testing::random_expr(rng);
		CHECK(euler_characteristic(boundary_sum(a, b)) + 1 ==
		      euler_characteristic(a) + euler_characteristic(b));
	}
}

TEST_CASE("boundary recognition of the named families") {
	BoundaryDescriptor b = boundary_descriptor(parse_expr("P(A,4;2)"));
	CHECK(b.kind == BoundaryDescriptor::Kind::LensSpace);
	CHECK(b.p == 5);
	CHECK(b.q == 1);
	CHECK(b.orientation == BoundaryDescriptor::Orientation::AsStated);

	BoundaryDescriptor d = boundary_descriptor(parse_expr("P(D,7;2) + SxS"));
	CHECK(d.kind == BoundaryDescriptor::Kind::DicyclicQuotient);
	CHECK(d.n == 5);

	BoundaryDescriptor e = boundary_descriptor(parse_expr("E(-4)"));
	CHECK(e.kind == BoundaryDescriptor::Kind::LensSpace);
	CHECK(e.p == 4);
	CHECK(e.orientation == BoundaryDescriptor::Orientation::AsStated);

	// the mirrored convention tag for positive Euler numbers
	CHECK(boundary_descriptor(parse_expr("E(4)")).orientation == BoundaryDescriptor::Orientation::Mirrored);

	// sphere-boundary atoms are transparent
	CHECK(boundary_descriptor(parse_expr("P(A,4;2) + CP2 + CP2bar + D4 + SxtS")).p == 5);
	CHECK(boundary_descriptor(parse_expr("SxS + CP2")).kind == BoundaryDescriptor::Kind::Sphere);
	CHECK(boundary_descriptor(parse_expr("E(-1)")).kind == BoundaryDescriptor::Kind::Sphere);
	CHECK(boundary_descriptor(parse_expr("Estar(5)")).kind == BoundaryDescriptor::Kind::DicyclicQuotient);

	// relabeled graphs are recognized by shape
	CHECK(boundary_descriptor(parse_expr("G{4:2,8:2,6:2; 4-6,6-8}")).p == 4);

	// the 3-vertex all-2 path and the smallest dicyclic quotient are the same manifold
	CHECK(boundary_descriptor(parse_expr("P(D,3;2)")).p == 4);
}

TEST_CASE("unrecognized rational homology spheres report H1") {
	BoundaryDescriptor b = boundary_descriptor(parse_expr("P(A,2;3)"));
	CHECK(b.kind == BoundaryDescriptor::Kind::UnknownQHS);
	BoundaryDescriptor two = boundary_descriptor(parse_expr("P(A,4;2) + E(-3)"));
	CHECK(two.kind == BoundaryDescriptor::Kind::UnknownQHS);
	Int order = 1;
	for (const Int& f : two.h1_factors) order *= f;
	CHECK(order == 15);
}

TEST_CASE("degenerate forms are refused as boundaries") {
	CHECK_THROWS_AS(boundary_descriptor(parse_expr("E(0)")), DegenerateBoundaryError);
	CHECK_THROWS_AS(boundary_descriptor(parse_expr("G{1:0;}")), DegenerateBoundaryError);
}

TEST_CASE("H1 order always equals |det| when nonzero") {
	std::mt19937_64 rng(31);
	int checked = 0;
	for (int trial = 0; trial < 80; ++trial) {
		FourManifoldExpr e = testing::random_expr(rng);
		SymForm f = intersection_form(e);
		Int d = determinant(f);
		if (d == 0) continue;
		Int snf_product = 1;
		for (const Int& v : smith_normal_form(f)) snf_product *= v;
		CHECK(snf_product == abs(d));
		++checked;
	}
	CHECK(checked > 40);
}

TEST_CASE("parse/print round trip is stable on generated expressions") {
	std::mt19937_64 rng(88);
	for (int trial = 0; trial < 60; ++trial) {
		FourManifoldExpr e = testing::random_expr(rng);
		std::string printed = print_expr(e);
		FourManifoldExpr reparsed = parse_expr(printed);
		CHECK(reparsed == e);
		CHECK(print_expr(reparsed) == printed);
	}
}
