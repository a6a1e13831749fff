#include "immcalc/dicyclic.hpp"

#include <set>
#include <stdexcept>

namespace immcalc {

namespace {

long long mod2n(long long k, long long n) {
	long long m = k % (2 * n);
	return m < 0 ? m + 2 * n : m;
}

}  // namespace

DicyclicElement::DicyclicElement(long long n, long long k, int e) : n_(n), k_(0), e_(e) {
	if (n < 1) throw std::invalid_argument("dicyclic parameter must be positive");
	if (e != 0 && e != 1) throw std::invalid_argument("x-exponent must be 0 or 1");
	k_ = mod2n(k, n);
}

DicyclicElement DicyclicElement::operator*(const DicyclicElement& rhs) const {
	if (n_ != rhs.n_) throw std::invalid_argument("dicyclic multiplication: parameter mismatch");
	// a^k x a^l = a^(k-l) x, and x^2 = a^n
	if (e_ == 0) return {n_, k_ + rhs.k_, rhs.e_};
	if (rhs.e_ == 0) return {n_, k_ - rhs.k_, 1};
	return {n_, k_ - rhs.k_ + n_, 0};
}

DicyclicElement DicyclicElement::inverse() const {
	if (e_ == 0) return {n_, -k_, 0};
	return {n_, k_ + n_, 1};  // (a^k x)^-1 = a^(k+n) x
}

std::string DicyclicElement::to_string() const {
	if (is_identity()) return "1";
	std::string out;
	if (k_ != 0) out += "a^" + std::to_string(k_);
	if (e_ != 0) out += out.empty() ? "x" : " x";
	return out;
}

DicyclicElement dic_mul(const DicyclicElement& lhs, const DicyclicElement& rhs) { return lhs * rhs; }

long long dic_order(long long n) {
	if (n < 1) throw std::invalid_argument("dicyclic parameter must be positive");
	const std::vector<DicyclicElement> gens{DicyclicElement::gen_a(n), DicyclicElement::gen_x(n)};
	auto key = [](const DicyclicElement& g) { return std::pair<long long, int>(g.k(), g.e()); };
	std::set<std::pair<long long, int>> seen{key(DicyclicElement::identity(n))};
	std::vector<DicyclicElement> frontier{DicyclicElement::identity(n)};
	while (!frontier.empty()) {
		std::vector<DicyclicElement> next;
		for (const auto& g : frontier)
			for (const auto& h : gens) {
				DicyclicElement p = g * h;
				if (seen.insert(key(p)).second) next.push_back(p);
			}
		frontier = std::move(next);
	}
	return static_cast<long long>(seen.size());
}

long long element_order(const DicyclicElement& g) {
	long long order = 1;
	DicyclicElement p = g;
	while (!p.is_identity()) {
		p = p * g;
		++order;
		if (order > 4 * g.n()) throw std::logic_error("element order exceeded the group order");
	}
	return order;
}

bool check_extension(long long n) {
	const DicyclicElement a = DicyclicElement::gen_a(n);
	const DicyclicElement x = DicyclicElement::gen_x(n);
	if (element_order(a) != 2 * n) return false;
	// normality of <a>: conjugates of a by every element stay powers of a
	std::vector<DicyclicElement> all;
	for (long long k = 0; k < 2 * n; ++k)
		for (int e = 0; e < 2; ++e) all.emplace_back(n, k, e);
	for (const auto& g : all) {
		DicyclicElement conj = g * a * g.inverse();
		if (conj.e() != 0) return false;
	}
	// index 2 and quotient Z_2: x not in <a>, x^2 in <a>
	if (dic_order(n) != 2 * (2 * n)) return false;
	if (x.e() != 1) return false;
	DicyclicElement xx = x * x;
	return xx.e() == 0;
}

Int FiniteAbelianGroup::order() const {
	Int o = 1;
	for (const Int& d : invariant_factors) o *= d;
	return o;
}

std::string FiniteAbelianGroup::to_string() const {
	if (invariant_factors.empty()) return "0";
	std::string out;
	for (size_t i = 0; i < invariant_factors.size(); ++i) {
		if (i) out += "x";
		out += "Z" + invariant_factors[i].get_str();
	}
	return out;
}

FiniteAbelianGroup abelianization(long long n) {
	if (n < 1) throw std::invalid_argument("dicyclic parameter must be positive");
	// relations a^n x^-2 and x a x^-1 a, abelianized: n*a - 2x = 0, 2a = 0
	Mat rel(2, 2);
	rel.at(0, 0) = make_int(n);
	rel.at(0, 1) = -2;
	rel.at(1, 0) = 2;
	rel.at(1, 1) = 0;
	FiniteAbelianGroup out;
	for (const Int& d : smith_normal_form(rel))
		if (d > 1) out.invariant_factors.push_back(d);
	return out;
}

namespace {

// e^{ik pi/n} j^e with the angle as a residue mod 2n.
struct UnitQuaternion {
	long long n;
	long long angle;
	int j;
};

// q * e^{i theta}: pull the scalar through the j-factor with j z = conj(z) j.
UnitQuaternion times_scalar(UnitQuaternion q, long long theta) {
	q.angle += q.j ? -theta : theta;
	return q;
}

// q * j, folding j^2 = -1 = e^{i pi} into the angle.
UnitQuaternion times_j(UnitQuaternion q) {
	if (q.j) {
		q.j = 0;
		q.angle += q.n;
	} else {
		q.j = 1;
	}
	return q;
}

}  // namespace

DicyclicElement quaternion_model_mul(const DicyclicElement& lhs, const DicyclicElement& rhs) {
	if (lhs.n() != rhs.n()) throw std::invalid_argument("dicyclic multiplication: parameter mismatch");
	UnitQuaternion q{lhs.n(), lhs.k(), lhs.e()};
	q = times_scalar(q, rhs.k());
	if (rhs.e()) q = times_j(q);
	return {q.n, q.angle, q.j};
}

}  // namespace immcalc
