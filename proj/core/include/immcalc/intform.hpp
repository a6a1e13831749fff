#pragma once

#include <optional>
#include <string>
#include <vector>

#include "immcalc/matrix.hpp"

namespace immcalc {

/// Symmetric bilinear form over Z. Immutable value type; rank 0 is the empty form.
class SymForm {
 public:
	SymForm() = default;
	explicit SymForm(Mat m);
	static SymForm diagonal(const std::vector<Int>& entries);
	static SymForm from_literal(std::string_view text) { return SymForm(parse_matrix_literal(text)); }

	int size() const { return m_.rows; }
	const Int& at(int i, int j) const { return m_.at(i, j); }
	const Mat& matrix() const { return m_; }
	std::string literal() const { return to_literal(m_); }

	bool operator==(const SymForm&) const = default;

 private:
	Mat m_;
};

enum class Parity { Even, Odd };

std::string to_string(Parity p);

SymForm direct_sum(const SymForm& a, const SymForm& b);

/// n+ - n- of the rationalized form; degenerate directions contribute 0.
int signature(const SymForm& f);
int rank(const SymForm& f);
Int determinant(const SymForm& f);
/// Even iff every diagonal entry is even (equivalently Q(v) is even for all v).
Parity parity(const SymForm& f);
std::vector<Int> smith_normal_form(const SymForm& f);

struct FormInvariants {
	int rank = 0;
	int signature = 0;
	Int det;
	Parity parity = Parity::Even;
	std::vector<Int> snf;

	bool operator==(const FormInvariants&) const = default;
};

FormInvariants invariants(const SymForm& f);

/// Names of invariants, in screening order, on which two bundles disagree.
std::vector<std::string> invariant_mismatches(const FormInvariants& a, const FormInvariants& b);

}  // namespace immcalc
