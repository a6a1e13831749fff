#pragma once

#include <string>
#include <vector>

#include "immcalc/matrix.hpp"

namespace immcalc {

/// Element of the order-4n group <a, x | a^n = x^2, x a x^-1 = a^-1>,
/// kept in the normal form a^k x^e with k mod 2n and e in {0, 1}.
class DicyclicElement {
 public:
	DicyclicElement(long long n, long long k, int e);

	static DicyclicElement identity(long long n) { return {n, 0, 0}; }
	static DicyclicElement gen_a(long long n) { return {n, 1, 0}; }
	static DicyclicElement gen_x(long long n) { return {n, 0, 1}; }

	long long n() const { return n_; }
	long long k() const { return k_; }
	int e() const { return e_; }

	DicyclicElement operator*(const DicyclicElement& rhs) const;
	DicyclicElement inverse() const;
	bool is_identity() const { return k_ == 0 && e_ == 0; }
	std::string to_string() const;

	bool operator==(const DicyclicElement&) const = default;

 private:
	long long n_;
	long long k_;  // exponent of a, reduced mod 2n
	int e_;        // exponent of x, 0 or 1
};

DicyclicElement dic_mul(const DicyclicElement& lhs, const DicyclicElement& rhs);

/// Group order by closure of {a, x} under multiplication (not by formula).
long long dic_order(long long n);
long long element_order(const DicyclicElement& g);

/// Exactness of 1 -> Z_2n -> Dic_n -> Z_2 -> 1: <a> is cyclic of order 2n,
/// normal, of index 2, with quotient of order 2.
bool check_extension(long long n);

struct FiniteAbelianGroup {
	std::vector<Int> invariant_factors;  // each > 1, divisibility chain

	Int order() const;
	std::string to_string() const;  // "Z4", "Z2xZ2", "0" for the trivial group
	bool operator==(const FiniteAbelianGroup&) const = default;
};

/// Abelianized presentation via the Smith normal form of the relation matrix.
FiniteAbelianGroup abelianization(long long n);

/// Unit-quaternion realisation with exact angle residues: elements
/// e^{ik pi/n} x^e with the angle tracked in Z_2n. Multiplication must agree
/// with the normal-form rule pointwise; kept separate as a cross-check.
DicyclicElement quaternion_model_mul(const DicyclicElement& lhs, const DicyclicElement& rhs);

}  // namespace immcalc
