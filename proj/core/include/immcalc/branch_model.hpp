#pragma once

#include <string>
#include <utility>

namespace immcalc {

/// Smooth transition profile rho: [0,1] -> [0,1] with rho = 1 on [0,c],
/// rho = 0 on [1/2,1], strictly decreasing in between. Two distinct shapes are
/// provided so the verdict can be checked to be profile-independent.
struct BumpProfile {
	enum class Shape { Exponential, Polynomial };

	double c = 0.05;  // must lie in (0, 1/2)
	Shape shape = Shape::Exponential;

	double rho(double t) const;
	double drho(double t) const;

	static BumpProfile exponential(double c) { return {c, Shape::Exponential}; }
	static BumpProfile polynomial(double c) { return {c, Shape::Polynomial}; }
};

/// The perturbed square map z -> z^2 + rho(|z|^2) z on the unit disk, in real coordinates.
std::pair<double, double> phi_tilde(double x, double y, const BumpProfile& bump);

struct Jacobian2 {
	double j11 = 0, j12 = 0, j21 = 0, j22 = 0;
};

/// Closed-form Jacobian entries of phi_tilde.
Jacobian2 jacobian_entries(double x, double y, const BumpProfile& bump);

struct RankSweepResult {
	bool ok = false;
	double min_entry_max = 0;  // min over grid points of max |entry|
	long long cells_checked = 0;
	double worst_x = 0, worst_y = 0;
	bool elimination_ok = false;
};

/// Sweeps a grid x grid lattice over the unit disk and checks that the four
/// Jacobian entries never become simultaneously small: min over points of
/// max(|J11|,|J12|,|J21|,|J22|) stays at or above `margin`. Also runs the exact
/// symbolic elimination showing the system J = 0 forces x = y = 0, which the
/// annulus c < x^2+y^2 < 1/2 excludes.
RankSweepResult verify_no_rank2(int grid, const BumpProfile& bump, double margin);

/// Exact polynomial-level check (no floating point): the four entry formulas
/// are the partial derivatives of phi_tilde, the off-diagonal difference is 4y,
/// and on y = 0 the diagonal difference is 2 rho' x^2. With rho' < 0 strictly
/// inside the transition annulus, a common zero forces x = y = 0.
bool elimination_check();

/// Algebraic number of rank-2 points of the model (z,w) -> (z^2,w): zero.
/// The ledger imports this value from the statement, not from the sweep;
/// the sweep is a regression guard for the formulas.
inline long long sigma2_model() { return 0; }

}  // namespace immcalc
