#include "immcalc/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace immcalc {

CongruenceBudget CongruenceBudget::scaled(double s) {
	if (s <= 0) throw std::invalid_argument("budget scale must be positive");
	CongruenceBudget b;
	b.bfs_states = static_cast<size_t>(b.bfs_states * s);
	b.nodes = static_cast<long long>(b.nodes * s);
	b.max_coeff = std::max(2, static_cast<int>(std::lround(b.max_coeff * std::min(s, 4.0))));
	return b;
}

bool verify_certificate(const SymForm& m1, const SymForm& m2, const Mat& u) {
	if (u.rows != m1.size() || u.cols != m2.size() || m1.size() != m2.size()) return false;
	Int d = det(u);
	if (d != 1 && d != -1) return false;
	return u.transposed() * m1.matrix() * u == m2.matrix();
}

namespace {

using State = std::vector<int64_t>;

int64_t i64abs(int64_t v) { return v < 0 ? -v : v; }

struct StateHash {
	size_t operator()(const State& s) const {
		uint64_t h = 1469598103934665603ull;
		for (int64_t v : s) {
			h ^= static_cast<uint64_t>(v);
			h *= 1099511628211ull;
		}
		return static_cast<size_t>(h);
	}
};

struct BfsMove {
	enum class Kind { Add, Flip } kind = Kind::Add;
	int i = 0, j = 0, eps = 0;

	std::string describe() const {
		if (kind == Kind::Flip) return "flip " + std::to_string(i + 1);
		return "slide " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
		       (eps > 0 ? std::string("+1") : std::string("-1"));
	}
};

struct BfsNode {
	int parent = -1;
	BfsMove move;
};

int64_t to_i64(const Int& v) {
	if (!v.fits_slong_p()) throw std::overflow_error("entry too large for move search");
	return v.get_si();
}

State to_state(const SymForm& f) {
	State s(static_cast<size_t>(f.size()) * f.size());
	for (int i = 0; i < f.size(); ++i)
		for (int j = 0; j < f.size(); ++j) s[static_cast<size_t>(i) * f.size() + j] = to_i64(f.at(i, j));
	return s;
}

// Applies the congruence for the move in place; returns false when the entry bound is exceeded.
bool apply_move(State& s, int n, const BfsMove& m, int64_t bound) {
	auto at = [&](int i, int j) -> int64_t& { return s[static_cast<size_t>(i) * n + j]; };
	if (m.kind == BfsMove::Kind::Flip) {
		for (int c = 0; c < n; ++c) at(m.i, c) = -at(m.i, c);
		for (int r = 0; r < n; ++r) at(r, m.i) = -at(r, m.i);
		return true;
	}
	for (int c = 0; c < n; ++c) at(m.i, c) += m.eps * at(m.j, c);
	for (int r = 0; r < n; ++r) at(r, m.i) += m.eps * at(r, m.j);
	for (int64_t v : s)
		if (i64abs(v) > bound) return false;
	return true;
}

Mat move_matrix(int n, const BfsMove& m, bool inverted) {
	Mat e = Mat::identity(n);
	if (m.kind == BfsMove::Kind::Flip)
		e.at(m.i, m.i) = -1;
	else
		e.at(m.j, m.i) = inverted ? -m.eps : m.eps;
	return e;
}

std::vector<BfsMove> enumerate_moves(int n, bool allow_flips) {
	std::vector<BfsMove> moves;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			if (i == j) continue;
			moves.push_back({BfsMove::Kind::Add, i, j, +1});
			moves.push_back({BfsMove::Kind::Add, i, j, -1});
		}
	if (allow_flips)
		for (int i = 0; i < n; ++i) moves.push_back({BfsMove::Kind::Flip, i, 0, 0});
	return moves;
}

struct Frontier {
	std::unordered_map<State, int, StateHash> seen;  // state -> node index
	std::vector<BfsNode> nodes;
	std::vector<State> states;
	std::deque<int> queue;

	void push(State s, int parent, const BfsMove& m) {
		if (seen.contains(s)) return;
		int idx = static_cast<int>(nodes.size());
		seen.emplace(s, idx);
		nodes.push_back({parent, m});
		states.push_back(std::move(s));
		queue.push_back(idx);
	}
};

// Word of moves from the frontier's root to node idx.
std::vector<BfsMove> unwind(const Frontier& f, int idx) {
	std::vector<BfsMove> word;
	while (idx > 0) {
		word.push_back(f.nodes[idx].move);
		idx = f.nodes[idx].parent;
	}
	std::reverse(word.begin(), word.end());
	return word;
}

}  // namespace

CongruenceResult congruent_by_moves(const SymForm& m1, const SymForm& m2, const CongruenceBudget& budget,
                                    bool allow_flips) try {
	const int n = m1.size();
	CongruenceResult out;
	if (n != m2.size()) {
		out.status = CongruenceResult::Status::No;
		out.witness = "rank";
		return out;
	}
	int64_t maxentry = 1;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			maxentry = std::max({maxentry, i64abs(to_i64(m1.at(i, j))), i64abs(to_i64(m2.at(i, j)))});
	const int64_t bound = static_cast<int64_t>(budget.entry_bound_factor) * maxentry;
	const auto moves = enumerate_moves(n, allow_flips);

	Frontier fwd, bwd;
	fwd.push(to_state(m1), -1, {});
	bwd.push(to_state(m2), -1, {});
	std::vector<int> depth_fwd{0}, depth_bwd{0};

	// wf takes m1 to the common state, wb takes m2 there; U = prod(wf) * prod(wb)^-1.
	auto assemble = [&](const std::vector<BfsMove>& wf, const std::vector<BfsMove>& wb) {
		Mat u = Mat::identity(n);
		CongruenceCertificate cert;
		for (const auto& m : wf) {
			u = u * move_matrix(n, m, false);
			cert.word.push_back(m.describe());
		}
		for (auto it = wb.rbegin(); it != wb.rend(); ++it) {
			u = u * move_matrix(n, *it, true);
			cert.word.push_back("undo " + it->describe());
		}
		cert.u = std::move(u);
		cert.verified = verify_certificate(m1, m2, cert.u);
		CongruenceResult r;
		if (cert.verified) {
			r.status = CongruenceResult::Status::Yes;
			r.certificate = std::move(cert);
		} else {
			r.status = CongruenceResult::Status::Unknown;
			r.note = "internal: move word failed re-verification";
		}
		return r;
	};

	if (fwd.states[0] == bwd.states[0]) return assemble({}, {});

	const int half_depth = budget.bfs_depth / 2;
	while (!fwd.queue.empty() || !bwd.queue.empty()) {
		const bool expand_fwd = !fwd.queue.empty() && (bwd.queue.empty() || fwd.queue.size() <= bwd.queue.size());
		Frontier& self = expand_fwd ? fwd : bwd;
		Frontier& other = expand_fwd ? bwd : fwd;
		std::vector<int>& depths = expand_fwd ? depth_fwd : depth_bwd;

		int idx = self.queue.front();
		self.queue.pop_front();
		if (depths[idx] >= half_depth) continue;
		if (self.states.size() > budget.bfs_states) break;

		for (const auto& m : moves) {
			State next = self.states[idx];
			if (!apply_move(next, n, m, bound)) continue;
			auto hit = other.seen.find(next);
			if (hit != other.seen.end()) {
				std::vector<BfsMove> wself = unwind(self, idx);
				wself.push_back(m);
				std::vector<BfsMove> wother = unwind(other, hit->second);
				return expand_fwd ? assemble(wself, wother) : assemble(wother, wself);
			}
			size_t before = self.nodes.size();
			self.push(std::move(next), idx, m);
			if (self.nodes.size() > before) depths.push_back(depths[idx] + 1);
		}
	}
	out.status = CongruenceResult::Status::Unknown;
	out.note = "move search exhausted (depth " + std::to_string(budget.bfs_depth) + ", " +
	           std::to_string(budget.bfs_states) + " states per side)";
	return out;
} catch (const std::overflow_error& e) {
	CongruenceResult out;
	out.status = CongruenceResult::Status::Unknown;
	out.note = e.what();
	return out;
}

namespace {

// Backtracking search for images of the target basis inside the source lattice.
// Finds V with V^T S V = T, all coefficients bounded by `coeff`.
class BasisImageSearch {
 public:
	BasisImageSearch(const Mat& source, const Mat& target, int coeff, long long* nodes)
	    : n_(source.rows), bound_(coeff), nodes_(nodes) {
		s_.assign(static_cast<size_t>(n_) * n_, 0);
		t_.assign(static_cast<size_t>(n_) * n_, 0);
		for (int i = 0; i < n_; ++i)
			for (int j = 0; j < n_; ++j) {
				s_[idx(i, j)] = to_i64(source.at(i, j));
				t_[idx(i, j)] = to_i64(target.at(i, j));
			}
		order_ = constraint_order();
		// Box bound for the tail of a partial norm: all coordinates from position p on.
		box_.assign(static_cast<size_t>(n_) + 1, 0);
		for (int p = n_ - 1; p >= 0; --p) {
			int64_t row = i64abs(s_[idx(p, p)]) * bound_ * bound_;
			for (int u = p + 1; u < n_; ++u) row += 2ll * bound_ * bound_ * i64abs(s_[idx(p, u)]);
			box_[p] = box_[p + 1] + row;
		}
	}

	std::optional<Mat> run() {
		vectors_.assign(static_cast<size_t>(n_), {});
		rows_.clear();
		if (!place(0)) return std::nullopt;
		Mat v(n_, n_);
		for (int step = 0; step < n_; ++step)
			for (int r = 0; r < n_; ++r) v.at(r, order_[step]) = vectors_[step][r];
		return v;
	}

 private:
	size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }

	// Target indices ordered so each new one touches as many placed ones as possible.
	std::vector<int> constraint_order() const {
		std::vector<int> order;
		std::vector<bool> used(static_cast<size_t>(n_), false);
		auto offmass = [&](int i) {
			int64_t m = 0;
			for (int j = 0; j < n_; ++j)
				if (j != i) m += i64abs(t_[idx(i, j)]);
			return m;
		};
		for (int step = 0; step < n_; ++step) {
			int best = -1;
			long long best_links = -1, best_mass = -1;
			for (int i = 0; i < n_; ++i) {
				if (used[i]) continue;
				long long links = 0;
				for (int placed : order)
					if (t_[idx(i, placed)] != 0) ++links;
				long long mass = offmass(i);
				if (links > best_links || (links == best_links && mass > best_mass)) {
					best = i;
					best_links = links;
					best_mass = mass;
				}
			}
			used[best] = true;
			order.push_back(best);
		}
		return order;
	}

	struct PlacedRow {
		int target_index = 0;         // column of the target Gram this vector realizes
		std::vector<int64_t> w;       // S * v for a placed vector v
		std::vector<int64_t> suffix;  // bound * sum of |w| from position p on
	};

	bool place(int step) {
		if (step == n_) return true;
		std::vector<int64_t> x(static_cast<size_t>(n_), 0);
		std::vector<int64_t> ps(static_cast<size_t>(n_), 0);  // prefix dots S*x for coords assigned so far
		return descend(step, 0, 0, x, ps);
	}

	bool descend(int step, int pos, int64_t q, std::vector<int64_t>& x, std::vector<int64_t>& ps) {
		if (*nodes_ <= 0) return false;
		const int ti = order_[step];
		if (pos == n_) {
			if (q != t_[idx(ti, ti)]) return false;
			for (const auto& row : rows_) {
				int64_t dot = 0;
				for (int r = 0; r < n_; ++r) dot += row.w[r] * x[r];
				if (dot != t_[idx(ti, row.target_index)]) return false;
			}
			vectors_[step] = x;
			PlacedRow row;
			row.target_index = ti;
			row.w.assign(static_cast<size_t>(n_), 0);
			for (int r = 0; r < n_; ++r)
				for (int u = 0; u < n_; ++u) row.w[r] += s_[idx(r, u)] * x[u];
			row.suffix.assign(static_cast<size_t>(n_) + 1, 0);
			for (int p = n_ - 1; p >= 0; --p) row.suffix[p] = row.suffix[p + 1] + bound_ * i64abs(row.w[p]);
			rows_.push_back(std::move(row));
			if (place(step + 1)) return true;
			rows_.pop_back();
			return false;
		}
		for (int64_t mag = 0; mag <= bound_; ++mag) {
			for (int sgn = 0; sgn < (mag == 0 ? 1 : 2); ++sgn) {
				const int64_t val = sgn == 0 ? mag : -mag;
				--*nodes_;
				if (*nodes_ <= 0) return false;
				// linear feasibility against every placed vector
				bool ok = true;
				for (const auto& row : rows_) {
					const int64_t want = t_[idx(ti, row.target_index)];
					int64_t partial = 0;
					for (int u = 0; u < pos; ++u) partial += row.w[u] * x[u];
					partial += row.w[pos] * val;
					if (i64abs(want - partial) > row.suffix[pos + 1]) {
						ok = false;
						break;
					}
				}
				if (!ok) continue;
				const int64_t q2 = q + val * val * s_[idx(pos, pos)] + 2 * val * ps[pos];
				// norm feasibility: box for the untouched tail plus cross terms with the prefix
				int64_t cross = 0;
				for (int u = pos + 1; u < n_; ++u) cross += i64abs(ps[u] + s_[idx(u, pos)] * val);
				if (i64abs(t_[idx(ti, ti)] - q2) > box_[pos + 1] + 2 * bound_ * cross) continue;
				x[pos] = val;
				for (int u = 0; u < n_; ++u) ps[u] += s_[idx(u, pos)] * val;
				if (descend(step, pos + 1, q2, x, ps)) return true;
				for (int u = 0; u < n_; ++u) ps[u] -= s_[idx(u, pos)] * val;
				x[pos] = 0;
			}
		}
		return false;
	}

	int n_;
	int64_t bound_;
	long long* nodes_;
	std::vector<int64_t> s_, t_;
	std::vector<int> order_;
	std::vector<int64_t> box_;
	std::vector<std::vector<int64_t>> vectors_;
	std::vector<PlacedRow> rows_;
};

int64_t offdiag_mass(const SymForm& f) {
	int64_t m = 0;
	for (int i = 0; i < f.size(); ++i)
		for (int j = 0; j < f.size(); ++j)
			if (i != j) m += i64abs(to_i64(f.at(i, j)));
	return m;
}

}  // namespace

CongruenceResult congruent(const SymForm& m1, const SymForm& m2, const CongruenceBudget& budget) {
	CongruenceResult out;
	if (m1.size() != m2.size()) {
		out.status = CongruenceResult::Status::No;
		out.witness = "rank";
		out.note = "sizes " + std::to_string(m1.size()) + " vs " + std::to_string(m2.size());
		return out;
	}
	FormInvariants i1 = invariants(m1), i2 = invariants(m2);
	auto mismatches = invariant_mismatches(i1, i2);
	if (!mismatches.empty()) {
		out.status = CongruenceResult::Status::No;
		out.witness = mismatches.front();
		return out;
	}
	if (m1 == m2) {
		CongruenceCertificate cert;
		cert.u = Mat::identity(m1.size());
		cert.verified = true;
		out.status = CongruenceResult::Status::Yes;
		out.certificate = std::move(cert);
		return out;
	}

	long long nodes = budget.nodes;
	try {
		if (m1.size() <= budget.bfs_max_rank) {
			CongruenceResult bfs = congruent_by_moves(m1, m2, budget, true);
			if (bfs.status == CongruenceResult::Status::Yes) return bfs;
		}

		// Basis-image search: enumerate images of the side with denser constraints
		// inside the other lattice, with iteratively deepened coefficient bound.
		const bool target_is_m2 = offdiag_mass(m2) >= offdiag_mass(m1);
		const Mat& source = target_is_m2 ? m1.matrix() : m2.matrix();
		const Mat& target = target_is_m2 ? m2.matrix() : m1.matrix();
		for (int coeff = 1; coeff <= budget.max_coeff && nodes > 0; ++coeff) {
			BasisImageSearch search(source, target, coeff, &nodes);
			if (auto v = search.run()) {
				CongruenceCertificate cert;
				cert.u = target_is_m2 ? *v : inverse_unimodular(*v);
				cert.verified = verify_certificate(m1, m2, cert.u);
				if (cert.verified) {
					out.status = CongruenceResult::Status::Yes;
					out.certificate = std::move(cert);
					return out;
				}
			}
		}
	} catch (const std::overflow_error& e) {
		out.status = CongruenceResult::Status::Unknown;
		out.note = e.what();
		return out;
	}
	out.status = CongruenceResult::Status::Unknown;
	out.note = nodes <= 0 ? "basis-image search: node budget exhausted"
	                      : "basis-image search exhausted up to coefficient bound " + std::to_string(budget.max_coeff);
	return out;
}

}  // namespace immcalc
