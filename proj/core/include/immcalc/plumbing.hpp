#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "immcalc/intform.hpp"

namespace immcalc {

/// Simple weighted graph describing a plumbing of disk bundles over spheres.
/// Vertices are kept sorted by id, edges normalized to (min,max) and sorted.
struct PlumbingGraph {
	struct Vertex {
		long long id = 0;
		long long weight = 0;
		bool operator==(const Vertex&) const = default;
	};
	std::vector<Vertex> vertices;
	std::vector<std::pair<long long, long long>> edges;

	static PlumbingGraph make(std::vector<Vertex> vertices, std::vector<std::pair<long long, long long>> edges);
	/// Chain 1-2-...-k, uniform weight.
	static PlumbingGraph a_chain(int k, long long weight);
	/// Tree with leaves 1,2 joined to 3, then chain 3-4-...-k; k >= 3.
	static PlumbingGraph d_tree(int k, long long weight);

	int size() const { return static_cast<int>(vertices.size()); }
	bool operator==(const PlumbingGraph&) const = default;
};

/// One building block of a 4-manifold expression.
struct Atom {
	enum class Kind {
		Plumbing,    // P(...) or G{...}
		DiskBundle,  // E(m): disk bundle over the sphere with Euler number m
		EStar,       // Estar(n): the twisted-bundle replacement with a 0-framed handle, n >= 1
		SxS,         // punctured S2 x S2
		SxtS,        // punctured twisted S2 bundle over S2
		CP2,         // punctured complex projective plane
		CP2bar,      // punctured conjugate complex projective plane
		D4,          // 4-ball
	};
	Kind kind = Kind::D4;
	long long m = 0;      // Euler number (DiskBundle) or family parameter (EStar)
	PlumbingGraph graph;  // only for Kind::Plumbing

	bool operator==(const Atom&) const = default;
};

/// Boundary connected sum of atoms, in order. Always nonempty.
struct FourManifoldExpr {
	std::vector<Atom> atoms;

	bool operator==(const FourManifoldExpr&) const = default;
};

FourManifoldExpr atom_expr(Atom a);
FourManifoldExpr plumbing_expr(PlumbingGraph g);
FourManifoldExpr disk_bundle_expr(long long m);
FourManifoldExpr estar_expr(long long n);
FourManifoldExpr simple_expr(Atom::Kind kind);
/// P(A,k;w) for k >= 1, or the 4-ball for k = 0.
FourManifoldExpr a_family_expr(int k, long long weight);
FourManifoldExpr d_family_expr(int k, long long weight);
FourManifoldExpr boundary_sum(FourManifoldExpr lhs, const FourManifoldExpr& rhs);
FourManifoldExpr repeated_sum(FourManifoldExpr base, const FourManifoldExpr& item, long long copies);

struct ExprParseError : std::runtime_error {
	int line;
	int column;
	ExprParseError(const std::string& what, int line_, int column_)
	    : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
	      line(line_),
	      column(column_) {}
};

/// Grammar:  expr := term (" + " term)*
///           term := "P(" ("A"|"D") "," k ";" w ")" | "E(" int ")" | "Estar(" posint ")"
///                 | "SxS" | "SxtS" | "CP2" | "CP2bar" | "D4"
///                 | "G{" id ":" w ("," id ":" w)* ";" [ id "-" id ("," id "-" id)* ] "}"
FourManifoldExpr parse_expr(std::string_view text);
std::string print_expr(const FourManifoldExpr& e);

SymForm intersection_form(const Atom& a);
SymForm intersection_form(const FourManifoldExpr& e);
long long euler_characteristic(const FourManifoldExpr& e);

struct BoundaryDescriptor {
	enum class Kind { LensSpace, DicyclicQuotient, Sphere, UnknownQHS };
	enum class Orientation { AsStated, Mirrored };

	Kind kind = Kind::Sphere;
	long long p = 0, q = 0;       // LensSpace(p, q)
	long long n = 0;              // DicyclicQuotient(n)
	std::vector<Int> h1_factors;  // UnknownQHS: invariant factors > 1 of H1
	Orientation orientation = Orientation::AsStated;

	std::string describe() const;
	bool operator==(const BoundaryDescriptor&) const = default;
};

struct DegenerateBoundaryError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// Recognizes the lens-space / dicyclic families; anything else with nonzero
/// determinant is reported with its H1. Throws DegenerateBoundaryError when det = 0.
BoundaryDescriptor boundary_descriptor(const FourManifoldExpr& e);

}  // namespace immcalc
