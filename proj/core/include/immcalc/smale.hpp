#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "immcalc/plumbing.hpp"

namespace immcalc {

/// Regular-homotopy class of an immersion of the 3-sphere in 4-space,
/// as a pair of integers; connected sum acts componentwise.
struct SmaleInvariant {
	long long a = 0;
	long long b = 0;
	bool operator==(const SmaleInvariant&) const = default;
};

SmaleInvariant connected_sum(SmaleInvariant lhs, SmaleInvariant rhs);
SmaleInvariant scalar(long long m, SmaleInvariant omega);

/// Raised when bookkeeping produces values the closed formulas rule out.
struct LedgerError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

long long hirzebruch_defect(long long sigma, long long sigma2);

/// (ndeg - 1, (-hdef - 2(ndeg - 1)) / 4); the division must be exact.
SmaleInvariant smale_invariant(long long ndeg, long long hdef);

/// Normal degree of the boundary restriction of an immersed filling: chi of the source.
long long ndeg_immersed(const FourManifoldExpr& e);
/// Normal degree multiplies by the covering degree under composition with a covering.
long long ndeg_composite(long long cover_degree, long long base_ndeg);

/// Algebraic count of rank-2 points of a generic map of a closed oriented
/// 4-manifold: -3 sigma.
long long sigma2_thom(long long sigma_closed);

/// Count for the fiberwise z -> z^k covering between disk bundles; imported constant.
long long sigma2_power_branch(long long k);

/// Evidence that the branch locus of the inner covering misses the singular
/// set of the outer map; composition refuses to run without it.
struct BranchDisjointness {
	bool established = false;
	std::string justification;
};

/// Count for a composition g . f per the Riemann-Hurwitz style rule:
/// deg(f) * sigma2(g) + sigma2(f). Requires disjointness evidence.
long long sigma2_compose(long long deg_f, long long s2_g, long long s2_f, const BranchDisjointness& disjoint);

/// Correction for replacing a connect-summand immersion: omega + deg * omega_beta.
SmaleInvariant modification_correction(SmaleInvariant omega_modified, long long deg, SmaleInvariant omega_beta);

/// Image in Z_24 under (a, b) -> a + 2b, as a residue in 0..23.
int bordism_class(SmaleInvariant omega);
bool is_generator(int bordism);

/// One contribution to the rank-2-point count, from the fixed menu of
/// justified sources. `value` is always determined by the kind and parameters.
struct Sigma2Contribution {
	enum class Kind {
		Immersion,    // an immersion has none: 0
		Thom,         // generic map of a closed oriented source: -3 sigma
		PowerBranch,  // fiberwise z -> z^k cover of a disk bundle: -(k^2 - 1)
		Z2Model,      // the (z,w) -> (z^2,w) local model: 0
		Compose,      // deg(inner) * outer + inner, branch loci disjoint
	};
	Kind kind = Kind::Immersion;
	long long parameter = 0;  // k for PowerBranch, sigma for Thom, deg for Compose
	long long value = 0;
	std::string note;
};

struct SeifertLedger {
	FourManifoldExpr source;  // the singular filling the invariants refer to
	long long sigma = 0;
	long long sigma2 = 0;
	long long ndeg = 0;
	std::vector<Sigma2Contribution> sigma2_terms;
	std::vector<std::string> trace;
};

/// True iff the contribution's value is the one its kind and parameter force.
bool sigma2_contribution_consistent(const Sigma2Contribution& term);

struct FamilyReport {
	SmaleInvariant omega;           // after the modification correction
	SmaleInvariant omega_modified;  // of the auxiliary immersion the filling bounds
	long long ndeg = 0;
	long long hdef = 0;
	long long sigma = 0;
	long long sigma2 = 0;
	int bordism = 0;
	bool generator = false;
	SeifertLedger ledger;
};

/// Smale invariant of the boundary restriction of the standard immersed
/// punctured S2 x S2; the correction term in both pipelines is its negative.
SmaleInvariant omega_t();

/// The lens-space family: covers of the boundary of the all-2 chain plumbing.
FamilyReport pipeline_f(long long n);
/// The dicyclic family: covers of the boundary of the all-2 D-tree plumbing.
FamilyReport pipeline_g(long long n);

}  // namespace immcalc
