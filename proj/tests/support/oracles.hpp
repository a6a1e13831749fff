// Test-only oracles, independent of the library code paths they check.
#pragma once

#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "immcalc/dicyclic.hpp"
#include "immcalc/plumbing.hpp"

namespace immcalc::testing {

/// Chain determinant by the three-term recurrence d_k = w d_{k-1} - d_{k-2}
/// (uniform weight w), d_0 = 1.
inline Int chain_det_recurrence(int k, long long w) {
	Int prev2 = 1, prev1 = make_int(w);
	if (k == 0) return prev2;
	for (int i = 2; i <= k; ++i) {
		Int cur = make_int(w) * prev1 - prev2;
		prev2 = prev1;
		prev1 = cur;
	}
	return prev1;
}

/// Determinant of a weighted tree's plumbing matrix by leaf removal:
/// for a leaf v with neighbor u, det(T) = w_v det(T - v) - det(T - v - u).
/// Recursion over vertex subsets; completely independent of the elimination code.
inline Int tree_det_oracle(const PlumbingGraph& g) {
	std::map<long long, long long> weight;
	for (const auto& v : g.vertices) weight[v.id] = v.weight;

	struct Solver {
		const PlumbingGraph& g;
		std::map<long long, long long>& weight;
		std::map<std::set<long long>, Int> memo;

		Int det(const std::set<long long>& keep) {
			if (keep.empty()) return 1;
			if (auto it = memo.find(keep); it != memo.end()) return it->second;
			// pick the vertex of smallest degree within keep (a leaf or isolated vertex)
			long long best = -1, best_id = 0;
			long long neighbor = 0;
			for (long long id : keep) {
				long long deg = 0, nb = 0;
				for (const auto& [a, b] : g.edges) {
					if (a == id && keep.contains(b)) {
						++deg;
						nb = b;
					}
					if (b == id && keep.contains(a)) {
						++deg;
						nb = a;
					}
				}
				if (best == -1 || deg < best) {
					best = deg;
					best_id = id;
					neighbor = nb;
				}
				if (deg == 0) break;
			}
			if (best > 1) throw std::invalid_argument("tree_det_oracle: not a forest");
			std::set<long long> rest = keep;
			rest.erase(best_id);
			Int result;
			if (best == 0) {
				result = make_int(weight[best_id]) * det(rest);
			} else {
				std::set<long long> rest2 = rest;
				rest2.erase(neighbor);
				result = make_int(weight[best_id]) * det(rest) - det(rest2);
			}
			memo[keep] = result;
			return result;
		}
	} solver{g, weight, {}};

	std::set<long long> all;
	for (const auto& v : g.vertices) all.insert(v.id);
	return solver.det(all);
}

/// Random symmetric form with entries in [-3, 3].
inline SymForm random_form(std::mt19937_64& rng, int n) {
	std::uniform_int_distribution<int> entry(-3, 3);
	Mat m(n, n);
	for (int i = 0; i < n; ++i)
		for (int j = i; j < n; ++j) {
			m.at(i, j) = entry(rng);
			m.at(j, i) = m.at(i, j);
		}
	return SymForm(std::move(m));
}

/// Random unimodular matrix: a word of transvections, sign flips and swaps.
inline Mat random_unimodular(std::mt19937_64& rng, int n, int word_length = 12) {
	Mat u = Mat::identity(n);
	std::uniform_int_distribution<int> pick(0, n - 1);
	std::uniform_int_distribution<int> kind(0, 5);
	for (int step = 0; step < word_length; ++step) {
		Mat e = Mat::identity(n);
		int i = pick(rng), j = pick(rng);
		switch (kind(rng)) {
			case 0:
			case 1:
			case 2:
			case 3:
				if (i == j) j = (j + 1) % n;
				e.at(i, j) = kind(rng) % 2 ? 1 : -1;
				break;
			case 4: e.at(i, i) = -1; break;
			default:
				if (i != j) {
					e.at(i, i) = 0;
					e.at(j, j) = 0;
					e.at(i, j) = 1;
					e.at(j, i) = 1;
				}
				break;
		}
		u = u * e;
	}
	return u;
}

inline SymForm conjugate(const SymForm& f, const Mat& u) { return SymForm(u.transposed() * f.matrix() * u); }

/// Random expression over the whole atom alphabet, including G-literals.
inline FourManifoldExpr random_expr(std::mt19937_64& rng) {
	std::uniform_int_distribution<int> natoms(1, 5);
	std::uniform_int_distribution<int> akind(0, 8);
	std::uniform_int_distribution<long long> euler(-5, 5);
	std::uniform_int_distribution<long long> weight(-3, 3);
	std::uniform_int_distribution<int> famsize(1, 6);
	FourManifoldExpr e;
	const int count = natoms(rng);
	for (int i = 0; i < count; ++i) {
		switch (akind(rng)) {
			case 0: e.atoms.push_back(plumbing_expr(PlumbingGraph::a_chain(famsize(rng), weight(rng))).atoms[0]); break;
			case 1:
				e.atoms.push_back(
				    plumbing_expr(PlumbingGraph::d_tree(3 + famsize(rng) % 4, weight(rng))).atoms[0]);
				break;
			case 2: e.atoms.push_back(disk_bundle_expr(euler(rng)).atoms[0]); break;
			case 3: e.atoms.push_back(estar_expr(1 + famsize(rng)).atoms[0]); break;
			case 4: e.atoms.push_back(simple_expr(Atom::Kind::SxS).atoms[0]); break;
			case 5: e.atoms.push_back(simple_expr(Atom::Kind::SxtS).atoms[0]); break;
			case 6: e.atoms.push_back(simple_expr(Atom::Kind::CP2).atoms[0]); break;
			case 7: e.atoms.push_back(simple_expr(Atom::Kind::CP2bar).atoms[0]); break;
			default: {
				// small random simple graph on shuffled ids
				const int n = famsize(rng) % 4 + 1;
				std::vector<PlumbingGraph::Vertex> vs;
				std::vector<long long> ids;
				for (int v = 0; v < n; ++v) ids.push_back(v * 2 + 1);  // non-contiguous on purpose
				for (int v = 0; v < n; ++v) vs.push_back({ids[v], weight(rng)});
				std::vector<std::pair<long long, long long>> edges;
				for (int x = 0; x < n; ++x)
					for (int y = x + 1; y < n; ++y)
						if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) edges.push_back({ids[x], ids[y]});
				e.atoms.push_back(plumbing_expr(PlumbingGraph::make(vs, edges)).atoms[0]);
				break;
			}
		}
	}
	return e;
}

/// Abelianization of the order-4n dicyclic group by brute force: close the
/// commutators into a subgroup, then inspect the quotient.
struct EnumeratedAbelianization {
	long long order = 0;
	bool has_order_four_element = false;  // distinguishes Z4 from Z2 x Z2
};

inline EnumeratedAbelianization abelianization_by_enumeration(long long n) {
	std::vector<DicyclicElement> all;
	for (long long k = 0; k < 2 * n; ++k)
		for (int e = 0; e < 2; ++e) all.emplace_back(n, k, e);
	auto key = [](const DicyclicElement& g) { return std::pair<long long, int>(g.k(), g.e()); };

	// derived subgroup: multiplicative closure of all commutators
	std::set<std::pair<long long, int>> comm;
	for (const auto& g : all)
		for (const auto& h : all) comm.insert(key(g * h * g.inverse() * h.inverse()));
	bool grew = true;
	while (grew) {
		grew = false;
		const std::vector<std::pair<long long, int>> items(comm.begin(), comm.end());
		for (const auto& [k1, e1] : items)
			for (const auto& [k2, e2] : items)
				if (comm.insert(key(DicyclicElement(n, k1, e1) * DicyclicElement(n, k2, e2))).second) grew = true;
	}

	EnumeratedAbelianization out;
	out.order = static_cast<long long>(4 * n) / static_cast<long long>(comm.size());
	// order of [g] in the quotient: smallest m with g^m in the derived subgroup
	for (const auto& g : all) {
		DicyclicElement p = g;
		long long m = 1;
		while (!comm.contains(key(p))) {
			p = p * g;
			++m;
		}
		if (m == 4) out.has_order_four_element = true;
	}
	return out;
}

}  // namespace immcalc::testing
