#pragma once

#include <optional>
#include <string>
#include <vector>

#include "immcalc/intform.hpp"

namespace immcalc {

/// Unimodular U with U^T M1 U = M2, plus the move word when the search produced one.
struct CongruenceCertificate {
	Mat u;
	bool verified = false;
	std::vector<std::string> word;
};

struct CongruenceBudget {
	/// Entry bound for the move search: 4 * max |entry| of the two inputs, times this factor.
	int entry_bound_factor = 4;
	int bfs_depth = 24;           // total, split across the two frontiers
	size_t bfs_states = 60000;    // per side
	int bfs_max_rank = 4;         // move search is only attempted at or below this rank
	int max_coeff = 6;            // basis-image search: iterative deepening coefficient bound
	long long nodes = 30000000;   // basis-image search node budget

	static CongruenceBudget scaled(double s);
};

struct CongruenceResult {
	enum class Status { Yes, No, Unknown };
	Status status = Status::Unknown;
	std::optional<CongruenceCertificate> certificate;
	std::string witness;  // for No: name of the mismatching invariant
	std::string note;

	bool yes() const { return status == Status::Yes; }
};

/// Exact re-check of a certificate: U^T M1 U == M2 and |det U| == 1.
bool verify_certificate(const SymForm& m1, const SymForm& m2, const Mat& u);

/// Decides congruence of two symmetric integer forms within a bounded search.
/// No always carries an invariant witness; Yes always carries a verified certificate.
CongruenceResult congruent(const SymForm& m1, const SymForm& m2, const CongruenceBudget& budget = {});

/// Move-word search only (slides and sign flips), bidirectional BFS.
/// Used for small instances and for freezing scripts; returns Unknown when the budget exhausts.
CongruenceResult congruent_by_moves(const SymForm& m1, const SymForm& m2, const CongruenceBudget& budget = {},
                                    bool allow_flips = true);

}  // namespace immcalc
