#include "immcalc/branch_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

namespace immcalc {

namespace {

double clamp01(double u) { return u < 0 ? 0 : u > 1 ? 1 : u; }

// C^inf step 0 -> 1 on [0,1] built from exp(-1/u).
double smooth_step_exp(double u) {
	auto f = [](double v) { return v <= 0 ? 0.0 : std::exp(-1.0 / v); };
	const double a = f(u), b = f(1 - u);
	return a / (a + b);
}

double smooth_step_exp_d(double u) {
	if (u <= 0 || u >= 1) return 0;
	auto f = [](double v) { return std::exp(-1.0 / v); };
	const double a = f(u), b = f(1 - u);
	// (a'b - ab') collapses to ab (1/u^2 + 1/(1-u)^2): no cancellation
	return a * b * (1.0 / (u * u) + 1.0 / ((1 - u) * (1 - u))) / ((a + b) * (a + b));
}

// C^2 quintic step 0 -> 1 on [0,1].
double smooth_step_poly(double u) {
	u = clamp01(u);
	return u * u * u * (10 + u * (-15 + 6 * u));
}

double smooth_step_poly_d(double u) {
	if (u <= 0 || u >= 1) return 0;
	return 30 * u * u * (1 - u) * (1 - u);
}

}  // namespace

double BumpProfile::rho(double t) const {
	if (c <= 0 || c >= 0.5) throw std::invalid_argument("bump transition start must lie in (0, 1/2)");
	if (t <= c) return 1;
	if (t >= 0.5) return 0;
	const double u = (t - c) / (0.5 - c);
	return shape == Shape::Exponential ? 1 - smooth_step_exp(u) : 1 - smooth_step_poly(u);
}

double BumpProfile::drho(double t) const {
	if (c <= 0 || c >= 0.5) throw std::invalid_argument("bump transition start must lie in (0, 1/2)");
	if (t <= c || t >= 0.5) return 0;
	const double u = (t - c) / (0.5 - c);
	const double du = 1.0 / (0.5 - c);
	return shape == Shape::Exponential ? -smooth_step_exp_d(u) * du : -smooth_step_poly_d(u) * du;
}

std::pair<double, double> phi_tilde(double x, double y, const BumpProfile& bump) {
	const double r = bump.rho(x * x + y * y);
	return {x * x - y * y + r * x, 2 * x * y + r * y};
}

Jacobian2 jacobian_entries(double x, double y, const BumpProfile& bump) {
	const double t = x * x + y * y;
	const double r = bump.rho(t);
	const double s = bump.drho(t);
	Jacobian2 j;
	j.j11 = s * 2 * x * x + r + 2 * x;
	j.j12 = s * 2 * x * y - 2 * y;
	j.j21 = s * 2 * x * y + 2 * y;
	j.j22 = s * 2 * y * y + r + 2 * x;
	return j;
}

RankSweepResult verify_no_rank2(int grid, const BumpProfile& bump, double margin) {
	if (grid < 64) throw std::invalid_argument("grid must be at least 64");
	if (margin <= 0) throw std::invalid_argument("margin must be positive");
	RankSweepResult out;
	out.min_entry_max = std::numeric_limits<double>::infinity();
	for (int i = 0; i <= grid; ++i) {
		const double x = -1.0 + 2.0 * i / grid;
		for (int k = 0; k <= grid; ++k) {
			const double y = -1.0 + 2.0 * k / grid;
			if (x * x + y * y > 1) continue;
			const Jacobian2 j = jacobian_entries(x, y, bump);
			const double m =
			    std::max({std::fabs(j.j11), std::fabs(j.j12), std::fabs(j.j21), std::fabs(j.j22)});
			++out.cells_checked;
			if (m < out.min_entry_max) {
				out.min_entry_max = m;
				out.worst_x = x;
				out.worst_y = y;
			}
		}
	}
	out.elimination_ok = elimination_check();
	out.ok = out.min_entry_max >= margin && out.elimination_ok;
	return out;
}

// ---------------------------------------------------------------------------
// exact elimination

namespace {

// Polynomials in x, y, r (= rho) and s (= rho'), integer coefficients.
struct Poly {
	// exponents (x, y, r, s) -> coefficient
	std::map<std::array<int, 4>, long long> terms;

	static Poly var(int which) {
		Poly p;
		std::array<int, 4> e{0, 0, 0, 0};
		e[which] = 1;
		p.terms[e] = 1;
		return p;
	}
	static Poly constant(long long c) {
		Poly p;
		if (c) p.terms[{0, 0, 0, 0}] = c;
		return p;
	}

	Poly operator+(const Poly& o) const {
		Poly out = *this;
		for (const auto& [e, c] : o.terms) {
			out.terms[e] += c;
			if (out.terms[e] == 0) out.terms.erase(e);
		}
		return out;
	}
	Poly operator-() const {
		Poly out;
		for (const auto& [e, c] : terms) out.terms[e] = -c;
		return out;
	}
	Poly operator-(const Poly& o) const { return *this + (-o); }
	Poly operator*(const Poly& o) const {
		Poly out;
		for (const auto& [e1, c1] : terms)
			for (const auto& [e2, c2] : o.terms) {
				std::array<int, 4> e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
				out.terms[e] += c1 * c2;
				if (out.terms[e] == 0) out.terms.erase(e);
			}
		return out;
	}
	Poly substitute_y_zero() const {
		Poly out;
		for (const auto& [e, c] : terms)
			if (e[1] == 0) out.terms[e] = c;
		return out;
	}
	bool operator==(const Poly&) const = default;
};

const int VX = 0, VY = 1, VR = 2, VS = 3;

// Formal partial derivative treating r as rho(x^2 + y^2): dr/dx = 2xs, dr/dy = 2ys.
// s itself never appears in the map components, so no second derivative enters.
Poly partial(const Poly& p, int which) {
	const Poly chain = Poly::constant(2) * Poly::var(which) * Poly::var(VS);
	Poly out;
	for (const auto& [e, c] : p.terms) {
		if (e[which] > 0) {
			std::array<int, 4> d = e;
			d[which] -= 1;
			Poly term;
			term.terms[d] = c * e[which];
			out = out + term;
		}
		if (e[VR] > 0) {
			std::array<int, 4> d = e;
			d[VR] -= 1;
			Poly term;
			term.terms[d] = c * e[VR];
			out = out + term * chain;
		}
	}
	return out;
}

}  // namespace

bool elimination_check() {
	const Poly x = Poly::var(VX), y = Poly::var(VY), r = Poly::var(VR), s = Poly::var(VS);
	const Poly two = Poly::constant(2), four = Poly::constant(4);

	// the map components u = x^2 - y^2 + r x, v = 2xy + r y
	const Poly u = x * x - y * y + r * x;
	const Poly v = two * x * y + r * y;

	// the four closed-form entries
	const Poly j11 = two * s * x * x + r + two * x;
	const Poly j12 = two * s * x * y - two * y;
	const Poly j21 = two * s * x * y + two * y;
	const Poly j22 = two * s * y * y + r + two * x;

	// (1) the closed forms really are the partial derivatives
	if (partial(u, VX) != j11 || partial(u, VY) != j12 || partial(v, VX) != j21 || partial(v, VY) != j22)
		return false;

	// (2) subtracting the off-diagonal equations forces y = 0
	if (j21 - j12 != four * y) return false;

	// (3) on y = 0 the diagonal difference is 2 s x^2, so s != 0 forces x = 0
	if ((j11 - j22).substitute_y_zero() != (two * s * x * x).substitute_y_zero()) return false;

	// (4) and the annulus c < x^2 + y^2 < 1/2 excludes the origin, where rho' < 0
	//     holds strictly, so the system has no solution there.
	return true;
}

}  // namespace immcalc
