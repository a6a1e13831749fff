#include "immcalc/plumbing.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace immcalc {

PlumbingGraph PlumbingGraph::make(std::vector<Vertex> vertices,
                                  std::vector<std::pair<long long, long long>> edges) {
	std::sort(vertices.begin(), vertices.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
	std::set<long long> ids;
	for (const auto& v : vertices)
		if (!ids.insert(v.id).second) throw std::invalid_argument("plumbing graph: duplicate vertex id");
	for (auto& [a, b] : edges) {
		if (a == b) throw std::invalid_argument("plumbing graph: loop edge");
		if (!ids.contains(a) || !ids.contains(b)) throw std::invalid_argument("plumbing graph: edge to unknown vertex");
		if (a > b) std::swap(a, b);
	}
	std::sort(edges.begin(), edges.end());
	if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
		throw std::invalid_argument("plumbing graph: multi-edge");
	PlumbingGraph g;
	g.vertices = std::move(vertices);
	g.edges = std::move(edges);
	return g;
}

PlumbingGraph PlumbingGraph::a_chain(int k, long long weight) {
	if (k < 1) throw std::invalid_argument("A-family size must be positive");
	std::vector<Vertex> vs;
	std::vector<std::pair<long long, long long>> es;
	for (int i = 1; i <= k; ++i) vs.push_back({i, weight});
	for (int i = 1; i < k; ++i) es.push_back({i, i + 1});
	return make(std::move(vs), std::move(es));
}

PlumbingGraph PlumbingGraph::d_tree(int k, long long weight) {
	if (k < 3) throw std::invalid_argument("D-family size must be at least 3");
	std::vector<Vertex> vs;
	std::vector<std::pair<long long, long long>> es{{1, 3}, {2, 3}};
	for (int i = 1; i <= k; ++i) vs.push_back({i, weight});
	for (int i = 3; i < k; ++i) es.push_back({i, i + 1});
	return make(std::move(vs), std::move(es));
}

FourManifoldExpr atom_expr(Atom a) { return FourManifoldExpr{{std::move(a)}}; }

FourManifoldExpr plumbing_expr(PlumbingGraph g) {
	Atom a;
	a.kind = Atom::Kind::Plumbing;
	a.graph = std::move(g);
	return atom_expr(std::move(a));
}

FourManifoldExpr disk_bundle_expr(long long m) {
	Atom a;
	a.kind = Atom::Kind::DiskBundle;
	a.m = m;
	return atom_expr(a);
}

FourManifoldExpr estar_expr(long long n) {
	if (n < 1) throw std::invalid_argument("Estar parameter must be positive");
	Atom a;
	a.kind = Atom::Kind::EStar;
	a.m = n;
	return atom_expr(a);
}

FourManifoldExpr simple_expr(Atom::Kind kind) {
	Atom a;
	a.kind = kind;
	return atom_expr(a);
}

FourManifoldExpr a_family_expr(int k, long long weight) {
	if (k == 0) return simple_expr(Atom::Kind::D4);
	return plumbing_expr(PlumbingGraph::a_chain(k, weight));
}

FourManifoldExpr d_family_expr(int k, long long weight) { return plumbing_expr(PlumbingGraph::d_tree(k, weight)); }

FourManifoldExpr boundary_sum(FourManifoldExpr lhs, const FourManifoldExpr& rhs) {
	lhs.atoms.insert(lhs.atoms.end(), rhs.atoms.begin(), rhs.atoms.end());
	return lhs;
}

FourManifoldExpr repeated_sum(FourManifoldExpr base, const FourManifoldExpr& item, long long copies) {
	for (long long i = 0; i < copies; ++i) base = boundary_sum(std::move(base), item);
	return base;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct ExprReader {
	std::string_view s;
	size_t pos = 0;

	int line() const {
		return 1 + static_cast<int>(std::count(s.begin(), s.begin() + static_cast<long>(pos), '\n'));
	}
	int column() const {
		size_t nl = s.rfind('\n', pos == 0 ? 0 : pos - 1);
		return pos == 0 ? 1 : static_cast<int>(pos - (nl == std::string_view::npos ? 0 : nl + 1)) + 1;
	}
	[[noreturn]] void fail(const std::string& what) const { throw ExprParseError(what, line(), column()); }

	void skip_ws() {
		while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
	}
	bool eat(char c) {
		skip_ws();
		if (pos < s.size() && s[pos] == c) {
			++pos;
			return true;
		}
		return false;
	}
	void expect(char c) {
		if (!eat(c)) fail(std::string("expected '") + c + "'");
	}
	bool eat_word(std::string_view w) {
		skip_ws();
		if (s.substr(pos, w.size()) != w) return false;
		// keywords must not run into further identifier characters
		size_t end = pos + w.size();
		if (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_')) return false;
		pos = end;
		return true;
	}
	long long integer() {
		skip_ws();
		size_t start = pos;
		if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
		size_t digits = pos;
		while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
		if (pos == digits) {
			pos = start;
			fail("expected integer");
		}
		try {
			return std::stoll(std::string(s.substr(start, pos - start)));
		} catch (const std::out_of_range&) {
			pos = start;
			fail("integer out of range");
		}
	}

	Atom term() {
		skip_ws();
		if (eat_word("P")) {
			expect('(');
			skip_ws();
			char fam = pos < s.size() ? s[pos] : '\0';
			if (fam != 'A' && fam != 'D') fail("unknown plumbing family (expected A or D)");
			++pos;
			expect(',');
			long long k = integer();
			expect(';');
			long long w = integer();
			expect(')');
			if (k <= 0) fail("family size must be positive");
			if (fam == 'D' && k < 3) fail("D-family size must be at least 3");
			if (k > 4096) fail("family size too large");
			Atom a;
			a.kind = Atom::Kind::Plumbing;
			a.graph = fam == 'A' ? PlumbingGraph::a_chain(static_cast<int>(k), w)
			                     : PlumbingGraph::d_tree(static_cast<int>(k), w);
			return a;
		}
		if (eat_word("Estar")) {
			expect('(');
			long long n = integer();
			expect(')');
			if (n <= 0) fail("Estar parameter must be positive");
			Atom a;
			a.kind = Atom::Kind::EStar;
			a.m = n;
			return a;
		}
		if (eat_word("E")) {
			expect('(');
			long long m = integer();
			expect(')');
			Atom a;
			a.kind = Atom::Kind::DiskBundle;
			a.m = m;
			return a;
		}
		if (eat_word("SxtS")) return Atom{Atom::Kind::SxtS, 0, {}};
		if (eat_word("SxS")) return Atom{Atom::Kind::SxS, 0, {}};
		if (eat_word("CP2bar")) return Atom{Atom::Kind::CP2bar, 0, {}};
		if (eat_word("CP2")) return Atom{Atom::Kind::CP2, 0, {}};
		if (eat_word("D4")) return Atom{Atom::Kind::D4, 0, {}};
		if (eat_word("G")) {
			expect('{');
			std::vector<PlumbingGraph::Vertex> vs;
			do {
				long long id = integer();
				expect(':');
				long long w = integer();
				vs.push_back({id, w});
				if (vs.size() > 4096) fail("graph too large");
			} while (eat(','));
			expect(';');
			std::vector<std::pair<long long, long long>> es;
			skip_ws();
			if (pos < s.size() && s[pos] != '}') {
				do {
					long long a = integer();
					expect('-');
					long long b = integer();
					es.push_back({a, b});
				} while (eat(','));
			}
			expect('}');
			Atom a;
			a.kind = Atom::Kind::Plumbing;
			try {
				a.graph = PlumbingGraph::make(std::move(vs), std::move(es));
			} catch (const std::invalid_argument& err) {
				fail(err.what());
			}
			return a;
		}
		fail("unknown atom");
	}
};

}  // namespace

FourManifoldExpr parse_expr(std::string_view text) {
	ExprReader r{text};
	FourManifoldExpr e;
	e.atoms.push_back(r.term());
	while (r.eat('+')) e.atoms.push_back(r.term());
	r.skip_ws();
	if (r.pos != text.size()) r.fail("trailing characters after expression");
	return e;
}

// ---------------------------------------------------------------------------
// printing

namespace {

// Shorthand only when the labels match the family constructors exactly:
// ids 1..k with chain edges for A, the two-leaves-into-3 tree for D.
bool is_canonical_a(const PlumbingGraph& g, long long& weight) {
	const int k = g.size();
	if (k == 0) return false;
	for (int i = 0; i < k; ++i)
		if (g.vertices[i].id != i + 1 || g.vertices[i].weight != g.vertices[0].weight) return false;
	weight = g.vertices[0].weight;
	return g == PlumbingGraph::a_chain(k, weight);
}

bool is_canonical_d(const PlumbingGraph& g, long long& weight) {
	const int k = g.size();
	if (k < 3) return false;
	for (int i = 0; i < k; ++i)
		if (g.vertices[i].id != i + 1 || g.vertices[i].weight != g.vertices[0].weight) return false;
	weight = g.vertices[0].weight;
	return g == PlumbingGraph::d_tree(k, weight);
}

std::string print_atom(const Atom& a) {
	switch (a.kind) {
		case Atom::Kind::DiskBundle: return "E(" + std::to_string(a.m) + ")";
		case Atom::Kind::EStar: return "Estar(" + std::to_string(a.m) + ")";
		case Atom::Kind::SxS: return "SxS";
		case Atom::Kind::SxtS: return "SxtS";
		case Atom::Kind::CP2: return "CP2";
		case Atom::Kind::CP2bar: return "CP2bar";
		case Atom::Kind::D4: return "D4";
		case Atom::Kind::Plumbing: break;
	}
	long long w = 0;
	if (is_canonical_a(a.graph, w)) return "P(A," + std::to_string(a.graph.size()) + ";" + std::to_string(w) + ")";
	if (is_canonical_d(a.graph, w)) return "P(D," + std::to_string(a.graph.size()) + ";" + std::to_string(w) + ")";
	std::string out = "G{";
	for (size_t i = 0; i < a.graph.vertices.size(); ++i) {
		if (i) out += ',';
		out += std::to_string(a.graph.vertices[i].id) + ":" + std::to_string(a.graph.vertices[i].weight);
	}
	out += ';';
	for (size_t i = 0; i < a.graph.edges.size(); ++i) {
		if (i) out += ',';
		out += std::to_string(a.graph.edges[i].first) + "-" + std::to_string(a.graph.edges[i].second);
	}
	out += '}';
	return out;
}

}  // namespace

std::string print_expr(const FourManifoldExpr& e) {
	std::string out;
	for (size_t i = 0; i < e.atoms.size(); ++i) {
		if (i) out += " + ";
		out += print_atom(e.atoms[i]);
	}
	return out;
}

// ---------------------------------------------------------------------------
// invariants

SymForm intersection_form(const Atom& a) {
	switch (a.kind) {
		case Atom::Kind::Plumbing: {
			const int n = a.graph.size();
			Mat m(n, n);
			std::map<long long, int> index;
			for (int i = 0; i < n; ++i) {
				index[a.graph.vertices[i].id] = i;
				m.at(i, i) = make_int(a.graph.vertices[i].weight);
			}
			for (const auto& [x, y] : a.graph.edges) {
				m.at(index.at(x), index.at(y)) = 1;
				m.at(index.at(y), index.at(x)) = 1;
			}
			return SymForm(std::move(m));
		}
		case Atom::Kind::DiskBundle: return SymForm::diagonal({make_int(a.m)});
		case Atom::Kind::EStar: {
			Mat m(2, 2);
			m.at(0, 1) = 2;
			m.at(1, 0) = 2;
			m.at(1, 1) = make_int(-a.m - 2);
			return SymForm(std::move(m));
		}
		case Atom::Kind::SxS: return SymForm::from_literal("[[0,1],[1,0]]");
		case Atom::Kind::SxtS: return SymForm::from_literal("[[0,1],[1,1]]");
		case Atom::Kind::CP2: return SymForm::diagonal({Int(1)});
		case Atom::Kind::CP2bar: return SymForm::diagonal({Int(-1)});
		case Atom::Kind::D4: return SymForm();
	}
	throw std::logic_error("unreachable");
}

SymForm intersection_form(const FourManifoldExpr& e) {
	SymForm total;
	for (const Atom& a : e.atoms) total = direct_sum(total, intersection_form(a));
	return total;
}

long long euler_characteristic(const FourManifoldExpr& e) {
	long long chi = 1;
	for (const Atom& a : e.atoms) {
		long long atom_rank = a.kind == Atom::Kind::Plumbing ? a.graph.size()
		                      : a.kind == Atom::Kind::D4     ? 0
		                      : a.kind == Atom::Kind::DiskBundle || a.kind == Atom::Kind::CP2 ||
		                              a.kind == Atom::Kind::CP2bar
		                          ? 1
		                          : 2;
		chi += atom_rank;  // chi(atom) = 1 + rank; each boundary sum subtracts 1
	}
	return chi;
}

// ---------------------------------------------------------------------------
// boundary recognition

namespace {

bool uniform_weight(const PlumbingGraph& g, long long w) {
	return std::all_of(g.vertices.begin(), g.vertices.end(), [&](const auto& v) { return v.weight == w; });
}

// Path shape up to relabeling: connected with exactly two endpoints (or one vertex).
bool is_path_graph(const PlumbingGraph& g) {
	const int n = g.size();
	if (n == 0) return false;
	if (static_cast<int>(g.edges.size()) != n - 1) return false;
	std::map<long long, int> degree;
	for (const auto& v : g.vertices) degree[v.id] = 0;
	for (const auto& [a, b] : g.edges) {
		++degree[a];
		++degree[b];
	}
	int leaves = 0;
	for (const auto& [id, d] : degree) {
		if (d > 2) return false;
		if (d <= 1) ++leaves;
	}
	if (n == 1) return leaves == 1;
	if (leaves != 2) return false;
	// edge count n-1 with max degree 2 and two leaves forces a single path if connected
	std::set<long long> reached{g.vertices[0].id};
	bool grew = true;
	while (grew) {
		grew = false;
		for (const auto& [a, b] : g.edges) {
			if (reached.contains(a) != reached.contains(b)) {
				reached.insert(a);
				reached.insert(b);
				grew = true;
			}
		}
	}
	return static_cast<int>(reached.size()) == n;
}

// D-tree shape up to relabeling: a path with two extra leaves on one of its ends.
bool is_d_tree_graph(const PlumbingGraph& g) {
	const int n = g.size();
	if (n < 4) return false;
	if (static_cast<int>(g.edges.size()) != n - 1) return false;
	std::map<long long, int> degree;
	std::map<long long, std::vector<long long>> adj;
	for (const auto& v : g.vertices) degree[v.id] = 0;
	for (const auto& [a, b] : g.edges) {
		++degree[a];
		++degree[b];
		adj[a].push_back(b);
		adj[b].push_back(a);
	}
	long long center = -1;
	for (const auto& [id, d] : degree) {
		if (d > 3) return false;
		if (d == 3) {
			if (center != -1) return false;
			center = id;
		}
	}
	if (center == -1) return false;
	int leaf_neighbors = 0;
	for (long long nb : adj[center])
		if (degree[nb] == 1) ++leaf_neighbors;
	if (leaf_neighbors < 2) return false;
	// remaining shape is a path hanging off the center (possibly empty for n = 4)
	std::set<long long> reached{g.vertices[0].id};
	bool grew = true;
	while (grew) {
		grew = false;
		for (const auto& [a, b] : g.edges)
			if (reached.contains(a) != reached.contains(b)) {
				reached.insert(a);
				reached.insert(b);
				grew = true;
			}
	}
	return static_cast<int>(reached.size()) == n;
}

std::vector<Int> h1_factors_from_form(const SymForm& f) {
	std::vector<Int> factors;
	for (const Int& d : smith_normal_form(f))
		if (d > 1) factors.push_back(d);
	return factors;
}

// Descriptor of a single atom's boundary, or Sphere for the S^3-boundary atoms.
BoundaryDescriptor atom_boundary(const Atom& a) {
	BoundaryDescriptor out;
	switch (a.kind) {
		case Atom::Kind::SxS:
		case Atom::Kind::SxtS:
		case Atom::Kind::CP2:
		case Atom::Kind::CP2bar:
		case Atom::Kind::D4: return out;  // Sphere
		case Atom::Kind::DiskBundle: {
			if (a.m == 0) throw DegenerateBoundaryError("boundary of E(0) is S1 x S2, not a rational homology sphere");
			long long k = a.m < 0 ? -a.m : a.m;
			if (k == 1) return out;  // L(1,1) = S^3
			out.kind = BoundaryDescriptor::Kind::LensSpace;
			out.p = k;
			out.q = 1;
			out.orientation =
			    a.m < 0 ? BoundaryDescriptor::Orientation::AsStated : BoundaryDescriptor::Orientation::Mirrored;
			return out;
		}
		case Atom::Kind::EStar:
			// Estar(n) keeps the boundary of the twisted bundle it replaces.
			out.kind = BoundaryDescriptor::Kind::DicyclicQuotient;
			out.n = a.m;
			return out;
		case Atom::Kind::Plumbing: {
			if (is_path_graph(a.graph) && uniform_weight(a.graph, 2)) {
				long long p = a.graph.size() + 1;
				if (p == 1) return out;
				out.kind = BoundaryDescriptor::Kind::LensSpace;
				out.p = p;
				out.q = 1;
				return out;
			}
			if (is_d_tree_graph(a.graph) && uniform_weight(a.graph, 2)) {
				out.kind = BoundaryDescriptor::Kind::DicyclicQuotient;
				out.n = a.graph.size() - 2;
				return out;
			}
			SymForm f = intersection_form(a);
			if (determinant(f) == 0)
				throw DegenerateBoundaryError("boundary is not a rational homology sphere (det = 0)");
			out.kind = BoundaryDescriptor::Kind::UnknownQHS;
			out.h1_factors = h1_factors_from_form(f);
			return out;
		}
	}
	throw std::logic_error("unreachable");
}

}  // namespace

std::string BoundaryDescriptor::describe() const {
	std::string tag = orientation == Orientation::Mirrored ? " (mirrored)" : "";
	switch (kind) {
		case Kind::Sphere: return "S3";
		case Kind::LensSpace: return "L(" + std::to_string(p) + "," + std::to_string(q) + ")" + tag;
		case Kind::DicyclicQuotient: return "S3/Dic(" + std::to_string(n) + ")" + tag;
		case Kind::UnknownQHS: {
			std::string h = "H1=";
			if (h1_factors.empty()) h += "0";
			for (size_t i = 0; i < h1_factors.size(); ++i) {
				if (i) h += "+";
				h += "Z" + h1_factors[i].get_str();
			}
			return "QHS(" + h + ")" + tag;
		}
	}
	return "";
}

BoundaryDescriptor boundary_descriptor(const FourManifoldExpr& e) {
	std::vector<BoundaryDescriptor> nontrivial;
	for (const Atom& a : e.atoms) {
		BoundaryDescriptor d = atom_boundary(a);
		if (d.kind != BoundaryDescriptor::Kind::Sphere) nontrivial.push_back(std::move(d));
	}
	if (nontrivial.empty()) return BoundaryDescriptor{};
	if (nontrivial.size() == 1) return nontrivial.front();
	// connected sum of several nontrivial pieces: report H1 only
	SymForm f = intersection_form(e);
	if (determinant(f) == 0) throw DegenerateBoundaryError("boundary is not a rational homology sphere (det = 0)");
	BoundaryDescriptor out;
	out.kind = BoundaryDescriptor::Kind::UnknownQHS;
	out.h1_factors = h1_factors_from_form(f);
	return out;
}

}  // namespace immcalc
