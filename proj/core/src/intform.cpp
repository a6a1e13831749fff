#include "immcalc/intform.hpp"

#include <stdexcept>
#include <utility>

namespace immcalc {

SymForm::SymForm(Mat m) : m_(std::move(m)) {
	if (m_.rows != m_.cols) throw std::invalid_argument("symmetric form: matrix not square");
	for (int i = 0; i < m_.rows; ++i)
		for (int j = i + 1; j < m_.cols; ++j)
			if (m_.at(i, j) != m_.at(j, i)) throw std::invalid_argument("symmetric form: matrix not symmetric");
}

SymForm SymForm::diagonal(const std::vector<Int>& entries) {
	Mat m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
	for (size_t i = 0; i < entries.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = entries[i];
	return SymForm(std::move(m));
}

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

SymForm direct_sum(const SymForm& a, const SymForm& b) {
	Mat m(a.size() + b.size(), a.size() + b.size());
	for (int i = 0; i < a.size(); ++i)
		for (int j = 0; j < a.size(); ++j) m.at(i, j) = a.at(i, j);
	for (int i = 0; i < b.size(); ++i)
		for (int j = 0; j < b.size(); ++j) m.at(a.size() + i, a.size() + j) = b.at(i, j);
	return SymForm(std::move(m));
}

namespace {

struct SigRank {
	int positives = 0;
	int negatives = 0;
};

// Symmetric Gauss over Q. When every remaining diagonal entry vanishes but some
// off-diagonal entry b = M_ij is nonzero, the congruence "row/col i += row/col j"
// makes M_ii = 2b and the usual pivot step applies.
SigRank diagonalize(const SymForm& f) {
	const int n = f.size();
	std::vector<Rat> m(static_cast<size_t>(n) * n);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * n + j] = Rat(f.at(i, j));
	auto at = [&](int i, int j) -> Rat& { return m[static_cast<size_t>(i) * n + j]; };

	std::vector<bool> done(static_cast<size_t>(n), false);
	SigRank out;
	for (int step = 0; step < n; ++step) {
		int pivot = -1;
		for (int i = 0; i < n; ++i)
			if (!done[i] && at(i, i) != 0) {
				pivot = i;
				break;
			}
		if (pivot < 0) {
			int oi = -1, oj = -1;
			for (int i = 0; i < n && oi < 0; ++i) {
				if (done[i]) continue;
				for (int j = i + 1; j < n; ++j)
					if (!done[j] && at(i, j) != 0) {
						oi = i;
						oj = j;
						break;
					}
			}
			if (oi < 0) break;  // remaining block is zero
			for (int c = 0; c < n; ++c) at(oi, c) += at(oj, c);
			for (int r = 0; r < n; ++r) at(r, oi) += at(r, oj);
			pivot = oi;
		}
		const Rat p = at(pivot, pivot);
		if (p > 0)
			++out.positives;
		else
			++out.negatives;
		done[pivot] = true;
		for (int r = 0; r < n; ++r) {
			if (done[r] || at(r, pivot) == 0) continue;
			const Rat factor = at(r, pivot) / p;
			for (int c = 0; c < n; ++c)
				if (!done[c]) at(r, c) -= factor * at(pivot, c);
			at(r, pivot) = 0;
		}
		for (int c = 0; c < n; ++c)
			if (!done[c]) at(pivot, c) = 0;
	}
	return out;
}

}  // namespace

int signature(const SymForm& f) {
	SigRank sr = diagonalize(f);
	return sr.positives - sr.negatives;
}

int rank(const SymForm& f) {
	SigRank sr = diagonalize(f);
	return sr.positives + sr.negatives;
}

Int determinant(const SymForm& f) { return det(f.matrix()); }

Parity parity(const SymForm& f) {
	for (int i = 0; i < f.size(); ++i)
		if (f.at(i, i) % 2 != 0) return Parity::Odd;
	return Parity::Even;
}

std::vector<Int> smith_normal_form(const SymForm& f) { return smith_normal_form(f.matrix()); }

FormInvariants invariants(const SymForm& f) {
	SigRank sr = diagonalize(f);
	return FormInvariants{sr.positives + sr.negatives, sr.positives - sr.negatives, determinant(f), parity(f),
	                      smith_normal_form(f)};
}

std::vector<std::string> invariant_mismatches(const FormInvariants& a, const FormInvariants& b) {
	std::vector<std::string> out;
	if (a.rank != b.rank) out.push_back("rank");
	if (a.signature != b.signature) out.push_back("signature");
	if (a.det != b.det) out.push_back("determinant");
	if (a.parity != b.parity) out.push_back("parity");
	if (a.snf != b.snf) out.push_back("smith_normal_form");
	return out;
}

}  // namespace immcalc
