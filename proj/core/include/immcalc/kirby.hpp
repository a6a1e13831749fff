#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "immcalc/congruence.hpp"
#include "immcalc/plumbing.hpp"

namespace immcalc {

/// Running count of stabilizations applied since the start state.
/// Blow-downs subtract, so a count can go negative when a component of the
/// original link is blown down.
struct StabilizationLedger {
	long long plus = 0;
	long long minus = 0;
	bool operator==(const StabilizationLedger&) const = default;
};

struct KirbyState {
	SymForm form;
	std::vector<std::string> labels;  // one per component
	StabilizationLedger ledger;

	static KirbyState from_form(SymForm f);
	static KirbyState from_expr(const FourManifoldExpr& e);
};

struct IllegalMoveError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// form <- form (+) <eps>; the ledger gains the stabilization.
KirbyState blowup(KirbyState s, int eps);
/// Deletes component k (1-based). Requires framing +-1 and no linking with other components.
KirbyState blowdown(KirbyState s, int k);
/// Handle slide of component i over component j (1-based, i != j):
/// congruence by E = I + eps*e_{ji}; the new framing is M_ii + 2 eps M_ij + M_jj.
KirbyState slide(KirbyState s, int i, int j, int eps);
/// Relabelling by a permutation given as images: component i becomes position perm[i-1] (1-based).
KirbyState permute(KirbyState s, const std::vector<int>& perm);

struct Move {
	enum class Kind { Blowup, Blowdown, Slide, Permute };
	Kind kind = Kind::Blowup;
	int eps = 0;
	int i = 0, j = 0;
	std::vector<int> perm;
	std::string text;  // original script line
};

/// Line-oriented script: `start`, moves, `expect`; `#` starts a comment.
/// Start and expectation are either an expression in the DSL or a matrix literal.
struct MoveScript {
	std::variant<FourManifoldExpr, SymForm> start;
	std::vector<Move> moves;
	std::variant<FourManifoldExpr, SymForm> expect;
};

MoveScript parse_move_script(std::string_view text);

struct ScriptStep {
	std::string move;
	SymForm form;
};

struct ScriptOutcome {
	bool passed = false;
	int failed_step = -1;  // 1-based step of the failure; the expect check counts one past the last move
	std::string reason;
	std::vector<ScriptStep> trace;
};

/// Runs all moves, checking legality at each step, then compares against the
/// expectation entrywise, allowing a component permutation.
ScriptOutcome run_script(const MoveScript& script);

// ---------------------------------------------------------------------------
// scripted verification of the family identities

enum class IdentityName { AStable, ABlowdown, DStable, DBlowdown, CoverEstar };

std::optional<IdentityName> identity_from_string(std::string_view name);
std::string to_string(IdentityName name);

struct IdentityComparison {
	std::string lhs, rhs;  // printable descriptions
	FormInvariants lhs_invariants, rhs_invariants;
	std::vector<std::string> mismatches;  // names of disagreeing invariants
	CongruenceResult congruence;
};

/// Report for one identity at one parameter value. The stable identities carry a
/// second comparison with the twisted bundle in place of the untwisted one: the
/// literal statement fails on parity and the report must surface that, while the
/// twisted variant is expected to admit a certificate.
struct IdentityReport {
	IdentityName name = IdentityName::AStable;
	long long n = 0;
	IdentityComparison literal;
	std::optional<IdentityComparison> twisted;
	bool ok = false;
	std::string summary;
};

IdentityReport verify_identity(IdentityName name, long long n, const CongruenceBudget& budget = {});

/// The derived 3x3 form of the double cover used by the CoverEstar identity.
SymForm estar_double_cover_form(long long n);

}  // namespace immcalc
