#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace immcalc {

using Int = mpz_class;
using Rat = mpq_class;

inline Int make_int(long long v) {
	static_assert(sizeof(long) == sizeof(long long), "assumes an LP64 target");
	return Int(static_cast<long>(v));
}

/// Dense integer matrix, row-major. Small sizes only; everything exact.
struct Mat {
	int rows = 0;
	int cols = 0;
	std::vector<Int> a;

	Mat() = default;
	Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

	Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
	const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

	static Mat identity(int n);
	Mat transposed() const;
	bool operator==(const Mat&) const = default;
};

Mat operator*(const Mat& lhs, const Mat& rhs);

/// Determinant by fraction-free (Bareiss) elimination. det of the 0x0 matrix is 1.
Int det(Mat m);

/// Inverse of a matrix with det = +-1. Throws std::invalid_argument otherwise.
Mat inverse_unimodular(const Mat& m);

/// Smith normal form diagonal of an arbitrary integer matrix:
/// nonnegative entries d_1 | d_2 | ... | d_k, padded with zeros up to min(rows, cols).
std::vector<Int> smith_normal_form(Mat m);

/// Parses "[[a,b,...],[...]]" (also "[]" for the empty matrix). Whitespace is ignored.
/// Throws std::invalid_argument on malformed or ragged input.
Mat parse_matrix_literal(std::string_view text);

/// Renders in the same literal format, no whitespace.
std::string to_literal(const Mat& m);

}  // namespace immcalc
