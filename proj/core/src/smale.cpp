#include "immcalc/smale.hpp"

#include <numeric>

namespace immcalc {

SmaleInvariant connected_sum(SmaleInvariant lhs, SmaleInvariant rhs) { return {lhs.a + rhs.a, lhs.b + rhs.b}; }

SmaleInvariant scalar(long long m, SmaleInvariant omega) { return {m * omega.a, m * omega.b}; }

long long hirzebruch_defect(long long sigma, long long sigma2) { return -3 * sigma - sigma2; }

SmaleInvariant smale_invariant(long long ndeg, long long hdef) {
	const long long r = -hdef - 2 * (ndeg - 1);
	if (r % 4 != 0)
		throw LedgerError("inconsistent ledger: -hdef - 2(ndeg-1) = " + std::to_string(r) +
		                  " is not divisible by 4 (ndeg = " + std::to_string(ndeg) +
		                  ", hdef = " + std::to_string(hdef) + ")");
	return {ndeg - 1, r / 4};
}

long long ndeg_immersed(const FourManifoldExpr& e) { return euler_characteristic(e); }

long long ndeg_composite(long long cover_degree, long long base_ndeg) {
	if (cover_degree < 1) throw std::invalid_argument("covering degree must be at least 1");
	return cover_degree * base_ndeg;
}

long long sigma2_thom(long long sigma_closed) { return -3 * sigma_closed; }

long long sigma2_power_branch(long long k) {
	if (k < 1) throw std::invalid_argument("fiber power must be at least 1");
	return -(k * k - 1);
}

long long sigma2_compose(long long deg_f, long long s2_g, long long s2_f, const BranchDisjointness& disjoint) {
	if (!disjoint.established)
		throw LedgerError(
		    "sigma2 of a composition needs the branch locus of the covering to miss the singular set of the outer "
		    "map; no disjointness evidence was supplied");
	return deg_f * s2_g + s2_f;
}

SmaleInvariant modification_correction(SmaleInvariant omega_modified, long long deg, SmaleInvariant omega_beta) {
	return connected_sum(omega_modified, scalar(deg, omega_beta));
}

int bordism_class(SmaleInvariant omega) {
	long long c = (omega.a + 2 * omega.b) % 24;
	return static_cast<int>(c < 0 ? c + 24 : c);
}

bool is_generator(int bordism) { return std::gcd(bordism, 24) == 1; }

bool sigma2_contribution_consistent(const Sigma2Contribution& term) {
	switch (term.kind) {
		case Sigma2Contribution::Kind::Immersion: return term.value == 0;
		case Sigma2Contribution::Kind::Thom: return term.value == sigma2_thom(term.parameter);
		case Sigma2Contribution::Kind::PowerBranch:
			return term.parameter >= 1 && term.value == sigma2_power_branch(term.parameter);
		case Sigma2Contribution::Kind::Z2Model: return term.value == 0;
		case Sigma2Contribution::Kind::Compose: return true;  // checked against its inputs where assembled
	}
	return false;
}

namespace {

long long atom_signature(const Atom& a) {
	switch (a.kind) {
		case Atom::Kind::Plumbing: return signature(intersection_form(a));
		case Atom::Kind::DiskBundle: return a.m > 0 ? 1 : a.m < 0 ? -1 : 0;
		case Atom::Kind::EStar: return 0;  // det -4 on rank 2
		case Atom::Kind::SxS: return 0;
		case Atom::Kind::SxtS: return 0;
		case Atom::Kind::CP2: return 1;
		case Atom::Kind::CP2bar: return -1;
		case Atom::Kind::D4: return 0;
	}
	return 0;
}

// Signature of a boundary connected sum, block by block.
long long signature_additive(const FourManifoldExpr& e) {
	long long s = 0;
	for (const Atom& a : e.atoms) s += atom_signature(a);
	return s;
}

void guard_family_parameter(long long n) {
	if (n < 1) throw std::invalid_argument("family parameter must be at least 1");
	// the dicyclic filling carries ~4n^2 summands; keep the materialized expression desk-scale
	if (n > 512) throw std::invalid_argument("family parameter too large (max 512)");
}

std::string omega_str(SmaleInvariant w) { return "(" + std::to_string(w.a) + "," + std::to_string(w.b) + ")"; }

}  // namespace

SmaleInvariant omega_t() {
	FourManifoldExpr source = simple_expr(Atom::Kind::SxS);
	const long long sigma = signature_additive(source);
	const long long sigma2 = 0;  // an immersion has no rank-2 points
	const long long ndeg = ndeg_immersed(source);
	return smale_invariant(ndeg, hirzebruch_defect(sigma, sigma2));
}

FamilyReport pipeline_f(long long n) {
	guard_family_parameter(n);
	FamilyReport r;
	SeifertLedger& ledger = r.ledger;

	// base of the covering: chain plumbing stabilized by the standard immersion of punctured S2 x S2
	FourManifoldExpr base = boundary_sum(a_family_expr(static_cast<int>(n) - 1, 2), simple_expr(Atom::Kind::SxS));
	// filling upstairs: one (-1)-bundle plus n^2 cp2 summands covering the n downstairs
	ledger.source = repeated_sum(disk_bundle_expr(-1), simple_expr(Atom::Kind::CP2), n * n);
	ledger.trace.push_back("filling: E(-1) + CP2 x " + std::to_string(n * n) +
	                       "; boundary is the degree-" + std::to_string(n) + " cover of the base boundary");

	ledger.sigma = signature_additive(ledger.source);
	ledger.trace.push_back("sigma = -1 + " + std::to_string(n * n) + " = " + std::to_string(ledger.sigma) +
	                       " (signature is additive over boundary connected sum)");

	ledger.sigma2 = sigma2_power_branch(n);
	ledger.sigma2_terms.push_back({Sigma2Contribution::Kind::PowerBranch, n, ledger.sigma2,
	                               "fiberwise z -> z^" + std::to_string(n) + " cover of the disk bundle"});
	ledger.sigma2_terms.push_back(
	    {Sigma2Contribution::Kind::Immersion, 0, 0, "the downstairs map is an immersion"});
	ledger.trace.push_back("sigma2 = -(n^2-1) = " + std::to_string(ledger.sigma2) +
	                       " (fiberwise z -> z^" + std::to_string(n) +
	                       " branched cover of the disk bundle; imported count, unchanged under composition with an "
	                       "immersion)");

	ledger.ndeg = ndeg_composite(n, ndeg_immersed(base));
	ledger.trace.push_back("ndeg = " + std::to_string(n) + " * chi(" + print_expr(base) + ") = " +
	                       std::to_string(n) + " * " + std::to_string(ndeg_immersed(base)) + " = " +
	                       std::to_string(ledger.ndeg));

	r.sigma = ledger.sigma;
	r.sigma2 = ledger.sigma2;
	r.ndeg = ledger.ndeg;
	r.hdef = hirzebruch_defect(ledger.sigma, ledger.sigma2);
	ledger.trace.push_back("hdef = -3*sigma - sigma2 = " + std::to_string(r.hdef));

	r.omega_modified = smale_invariant(r.ndeg, r.hdef);
	ledger.trace.push_back("omega(modified immersion) = (ndeg-1, (-hdef-2(ndeg-1))/4) = " +
	                       omega_str(r.omega_modified));

	const SmaleInvariant omega_s = scalar(-1, omega_t());
	r.omega = modification_correction(r.omega_modified, n, omega_s);
	ledger.trace.push_back("undo the stabilizing connect-summand: omega = omega' + " + std::to_string(n) + " * " +
	                       omega_str(omega_s) + " = " + omega_str(r.omega));

	r.bordism = bordism_class(r.omega);
	r.generator = is_generator(r.bordism);
	ledger.trace.push_back("bordism class = (a + 2b) mod 24 = " + std::to_string(r.bordism) +
	                       (r.generator ? " (generates Z24)" : ""));
	return r;
}

FamilyReport pipeline_g(long long n) {
	guard_family_parameter(n);
	FamilyReport r;
	SeifertLedger& ledger = r.ledger;

	FourManifoldExpr base = boundary_sum(d_family_expr(static_cast<int>(n) + 2, 2), simple_expr(Atom::Kind::SxS));
	// X_n is the untwisted or twisted punctured sphere bundle depending on the parity of n
	const Atom::Kind xn = n % 2 == 0 ? Atom::Kind::SxS : Atom::Kind::SxtS;
	FourManifoldExpr source = repeated_sum(disk_bundle_expr(-1), simple_expr(xn), 2 * n);
	ledger.source = repeated_sum(std::move(source), simple_expr(Atom::Kind::CP2), 4 * n * (n + 2));
	ledger.trace.push_back("filling: E(-1) + " + std::string(xn == Atom::Kind::SxS ? "SxS" : "SxtS") + " x " +
	                       std::to_string(2 * n) + " + CP2 x " + std::to_string(4 * n * (n + 2)) +
	                       "; boundary is the degree-" + std::to_string(4 * n) + " cover of the base boundary");

	ledger.sigma = signature_additive(ledger.source);
	ledger.trace.push_back("sigma = -1 + 0 + " + std::to_string(4 * n * (n + 2)) + " = " +
	                       std::to_string(ledger.sigma) + " (sphere bundles over the sphere have signature 0)");

	const long long s2_outer = 0;
	ledger.sigma2_terms.push_back(
	    {Sigma2Contribution::Kind::Z2Model, 0, s2_outer, "double cover branching along the model (z,w) -> (z^2,w)"});
	ledger.trace.push_back(
	    "sigma2(double cover stage) = 0: its branch model (z,w) -> (z^2,w) admits a perturbation with no rank-2 "
	    "points");
	const long long s2_inner = sigma2_power_branch(2 * n);
	ledger.sigma2_terms.push_back({Sigma2Contribution::Kind::PowerBranch, 2 * n, s2_inner,
	                               "fiberwise z -> z^" + std::to_string(2 * n) + " cover of the disk bundle"});
	ledger.trace.push_back("sigma2(fiber-power stage z -> z^" + std::to_string(2 * n) + ") = -(4n^2-1) = " +
	                       std::to_string(s2_inner) + " (imported count)");
	const BranchDisjointness disjoint{
	    true, "each stage branches along the core of its own 2-handle; the cores sit in disjoint handles"};
	ledger.sigma2 = sigma2_compose(2 * n, s2_outer, s2_inner, disjoint);
	ledger.sigma2_terms.push_back(
	    {Sigma2Contribution::Kind::Compose, 2 * n, ledger.sigma2, disjoint.justification});
	ledger.trace.push_back("sigma2 = deg(inner) * sigma2(outer) + sigma2(inner) = " + std::to_string(2 * n) +
	                       " * 0 + " + std::to_string(s2_inner) + " = " + std::to_string(ledger.sigma2) + " (" +
	                       disjoint.justification + ")");

	ledger.ndeg = ndeg_composite(4 * n, ndeg_immersed(base));
	ledger.trace.push_back("ndeg = " + std::to_string(4 * n) + " * chi(" + print_expr(base) + ") = " +
	                       std::to_string(4 * n) + " * " + std::to_string(ndeg_immersed(base)) + " = " +
	                       std::to_string(ledger.ndeg));

	r.sigma = ledger.sigma;
	r.sigma2 = ledger.sigma2;
	r.ndeg = ledger.ndeg;
	r.hdef = hirzebruch_defect(ledger.sigma, ledger.sigma2);
	ledger.trace.push_back("hdef = -3*sigma - sigma2 = " + std::to_string(r.hdef));

	r.omega_modified = smale_invariant(r.ndeg, r.hdef);
	ledger.trace.push_back("omega(modified immersion) = (ndeg-1, (-hdef-2(ndeg-1))/4) = " +
	                       omega_str(r.omega_modified));

	const SmaleInvariant omega_s = scalar(-1, omega_t());
	r.omega = modification_correction(r.omega_modified, 4 * n, omega_s);
	ledger.trace.push_back("undo the stabilizing connect-summand: omega = omega' + " + std::to_string(4 * n) +
	                       " * " + omega_str(omega_s) + " = " + omega_str(r.omega));

	r.bordism = bordism_class(r.omega);
	r.generator = is_generator(r.bordism);
	ledger.trace.push_back("bordism class = (a + 2b) mod 24 = " + std::to_string(r.bordism) +
	                       (r.generator ? " (generates Z24)" : ""));
	return r;
}

}  // namespace immcalc
