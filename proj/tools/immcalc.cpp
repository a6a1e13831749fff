// Command-line front end: expression invariants, the two immersion families,
// scripted identity verification, move-script replay, dicyclic group checks,
// and the branched-cover local model sweep. All results go to stdout as JSON,
// diagnostics to stderr. Exit codes: 0 success, 1 verification failed,
// 2 usage/parse error, 3 internal inconsistency.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "immcalc/branch_model.hpp"
#include "immcalc/congruence.hpp"
#include "immcalc/dicyclic.hpp"
#include "immcalc/kirby.hpp"
#include "immcalc/plumbing.hpp"
#include "immcalc/smale.hpp"

using json = nlohmann::ordered_json;
using namespace immcalc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

json json_int(const Int& v) {
	if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
	return v.get_str();
}

json json_invariants(const FormInvariants& inv) {
	json snf = json::array();
	for (const Int& d : inv.snf) snf.push_back(json_int(d));
	return json{{"rank", inv.rank},
	            {"signature", inv.signature},
	            {"det", json_int(inv.det)},
	            {"parity", to_string(inv.parity)},
	            {"snf", snf}};
}

json json_boundary(const BoundaryDescriptor& b) {
	json out;
	switch (b.kind) {
		case BoundaryDescriptor::Kind::Sphere: out["kind"] = "sphere"; break;
		case BoundaryDescriptor::Kind::LensSpace:
			out["kind"] = "lens_space";
			out["p"] = b.p;
			out["q"] = b.q;
			break;
		case BoundaryDescriptor::Kind::DicyclicQuotient:
			out["kind"] = "dicyclic_quotient";
			out["n"] = b.n;
			break;
		case BoundaryDescriptor::Kind::UnknownQHS: {
			out["kind"] = "unknown_qhs";
			json h1 = json::array();
			for (const Int& d : b.h1_factors) h1.push_back(json_int(d));
			out["h1"] = h1;
			break;
		}
	}
	out["orientation"] = b.orientation == BoundaryDescriptor::Orientation::AsStated ? "as-stated" : "mirrored";
	out["text"] = b.describe();
	return out;
}

json json_congruence(const CongruenceResult& r) {
	json out;
	switch (r.status) {
		case CongruenceResult::Status::Yes: out["status"] = "yes"; break;
		case CongruenceResult::Status::No: out["status"] = "no"; break;
		case CongruenceResult::Status::Unknown: out["status"] = "unknown"; break;
	}
	if (r.certificate) {
		json cert;
		cert["U"] = to_literal(r.certificate->u);
		cert["verified"] = r.certificate->verified;
		if (!r.certificate->word.empty()) cert["word"] = r.certificate->word;
		out["certificate"] = cert;
	}
	if (!r.witness.empty()) out["witness"] = r.witness;
	if (!r.note.empty()) out["note"] = r.note;
	return out;
}

json json_comparison(const IdentityComparison& c) {
	return json{{"lhs", c.lhs},
	            {"rhs", c.rhs},
	            {"lhs_invariants", json_invariants(c.lhs_invariants)},
	            {"rhs_invariants", json_invariants(c.rhs_invariants)},
	            {"mismatches", c.mismatches},
	            {"congruence", json_congruence(c.congruence)}};
}

void emit(const json& payload) { std::cout << payload.dump(2) << "\n"; }

struct RangeSpec {
	long long lo = 1, hi = 1;
};

RangeSpec parse_range(const std::string& text) {
	RangeSpec r;
	if (size_t dots = text.find(".."); dots != std::string::npos) {
		r.lo = std::stoll(text.substr(0, dots));
		r.hi = std::stoll(text.substr(dots + 2));
	} else {
		r.lo = r.hi = std::stoll(text);
	}
	if (r.lo < 1 || r.hi < r.lo) throw std::invalid_argument("bad range '" + text + "'");
	return r;
}

double parse_rational(const std::string& text) {
	if (size_t slash = text.find('/'); slash != std::string::npos) {
		double num = std::stod(text.substr(0, slash));
		double den = std::stod(text.substr(slash + 1));
		if (den == 0) throw std::invalid_argument("zero denominator");
		return num / den;
	}
	return std::stod(text);
}

int cmd_eval(const std::string& expr_text) {
	json out{{"schema", 1}, {"command", "eval"}, {"expr", expr_text}};
	FourManifoldExpr e;
	try {
		e = parse_expr(expr_text);
	} catch (const ExprParseError& err) {
		std::cerr << "parse error: " << err.what() << "\n";
		return kExitUsage;
	}
	SymForm form = intersection_form(e);
	FormInvariants inv = invariants(form);
	json result;
	result["chi"] = euler_characteristic(e);
	result["rank"] = inv.rank;
	result["sigma"] = inv.signature;
	result["det"] = json_int(inv.det);
	result["parity"] = to_string(inv.parity);
	json snf = json::array();
	for (const Int& d : inv.snf) snf.push_back(json_int(d));
	result["snf"] = snf;
	try {
		result["boundary"] = json_boundary(boundary_descriptor(e));
	} catch (const DegenerateBoundaryError& err) {
		result["boundary"] = json{{"kind", "not_rational_homology_sphere"}, {"text", err.what()}};
	}
	result["canonical"] = print_expr(e);
	out["result"] = result;
	emit(out);
	return kExitOk;
}

int cmd_family(char which, long long n, bool with_trace) {
	json out{{"schema", 1}, {"command", "family"}, {"family", std::string(1, which)}, {"n", n}};
	FamilyReport report;
	try {
		report = which == 'f' ? pipeline_f(n) : pipeline_g(n);
	} catch (const std::invalid_argument& err) {
		std::cerr << "usage error: " << err.what() << "\n";
		return kExitUsage;
	} catch (const LedgerError& err) {
		std::cerr << "internal inconsistency: " << err.what() << "\n";
		return kExitInternal;
	}
	json result;
	result["omega"] = json::array({report.omega.a, report.omega.b});
	result["omega_modified"] = json::array({report.omega_modified.a, report.omega_modified.b});
	result["ndeg"] = report.ndeg;
	result["hdef"] = report.hdef;
	result["sigma"] = report.sigma;
	result["sigma2"] = report.sigma2;
	result["bordism"] = report.bordism;
	result["generator"] = report.generator;
	result["trace"] = with_trace ? json(report.ledger.trace) : json::array();
	if (with_trace) {
		json terms = json::array();
		for (const auto& term : report.ledger.sigma2_terms) {
			const char* kind = "";
			switch (term.kind) {
				case Sigma2Contribution::Kind::Immersion: kind = "immersion"; break;
				case Sigma2Contribution::Kind::Thom: kind = "thom"; break;
				case Sigma2Contribution::Kind::PowerBranch: kind = "power_branch"; break;
				case Sigma2Contribution::Kind::Z2Model: kind = "z2_model"; break;
				case Sigma2Contribution::Kind::Compose: kind = "compose"; break;
			}
			terms.push_back(json{
			    {"kind", kind}, {"parameter", term.parameter}, {"value", term.value}, {"note", term.note}});
		}
		result["sigma2_terms"] = terms;
	}
	out["result"] = result;
	emit(out);
	return kExitOk;
}

int cmd_verify(const std::string& name, const std::string& range_text, double budget_scale) {
	auto identity = identity_from_string(name);
	if (!identity) {
		std::cerr << "usage error: unknown identity '" << name
		          << "' (expected A-stable, A-blowdown, D-stable, D-blowdown or cover-Estar)\n";
		return kExitUsage;
	}
	RangeSpec range;
	try {
		range = parse_range(range_text);
	} catch (const std::exception& err) {
		std::cerr << "usage error: " << err.what() << "\n";
		return kExitUsage;
	}
	CongruenceBudget budget = CongruenceBudget::scaled(budget_scale);
	json out{{"schema", 1},
	         {"command", "verify"},
	         {"identity", to_string(*identity)},
	         {"range", json::array({range.lo, range.hi})},
	         {"budget_scale", budget_scale}};
	json results = json::array();
	bool all_ok = true;
	for (long long n = range.lo; n <= range.hi; ++n) {
		IdentityReport rep = verify_identity(*identity, n, budget);
		json jn{{"n", n}, {"ok", rep.ok}, {"summary", rep.summary}};
		jn["literal"] = json_comparison(rep.literal);
		if (rep.twisted) jn["twisted"] = json_comparison(*rep.twisted);
		results.push_back(jn);
		all_ok = all_ok && rep.ok;
	}
	out["results"] = results;
	out["ok"] = all_ok;
	emit(out);
	return all_ok ? kExitOk : kExitVerificationFailed;
}

int cmd_kirby_run(const std::string& path) {
	std::ifstream in(path);
	if (!in) {
		std::cerr << "cannot open script '" << path << "'\n";
		return kExitUsage;
	}
	std::stringstream buffer;
	buffer << in.rdbuf();
	json out{{"schema", 1}, {"command", "kirby run"}, {"script", path}};
	MoveScript script;
	try {
		script = parse_move_script(buffer.str());
	} catch (const ExprParseError& err) {
		std::cerr << "script parse error: " << err.what() << "\n";
		return kExitUsage;
	}
	ScriptOutcome outcome = run_script(script);
	json result;
	result["status"] = outcome.passed ? "pass" : "fail";
	if (!outcome.passed) {
		result["failed_step"] = outcome.failed_step;
		result["reason"] = outcome.reason;
	}
	json trace = json::array();
	for (const ScriptStep& s : outcome.trace) trace.push_back(json{{"move", s.move}, {"matrix", s.form.literal()}});
	result["trace"] = trace;
	out["result"] = result;
	emit(out);
	return outcome.passed ? kExitOk : kExitVerificationFailed;
}

int cmd_group_dic(long long n, bool check) {
	json out{{"schema", 1}, {"command", "group dic"}, {"n", n}};
	if (n < 1) {
		std::cerr << "usage error: n must be at least 1\n";
		return kExitUsage;
	}
	bool ok = true;
	json result;
	result["order"] = dic_order(n);
	result["abelianization"] = abelianization(n).to_string();
	result["extension_ok"] = check_extension(n);
	ok = result["extension_ok"].get<bool>() && result["order"].get<long long>() == 4 * n;
	if (check) {
		// defining relations and the quaternion-model agreement, by enumeration
		const auto a = DicyclicElement::gen_a(n), x = DicyclicElement::gen_x(n);
		bool relations = (x * x == DicyclicElement(n, n, 0)) && (x * a * x.inverse() == a.inverse());
		bool model = true;
		for (long long k1 = 0; k1 < 2 * n && model; ++k1)
			for (int e1 = 0; e1 < 2 && model; ++e1)
				for (long long k2 = 0; k2 < 2 * n && model; ++k2)
					for (int e2 = 0; e2 < 2 && model; ++e2) {
						DicyclicElement g(n, k1, e1), h(n, k2, e2);
						model = g * h == quaternion_model_mul(g, h);
					}
		result["relations_ok"] = relations;
		result["quaternion_model_ok"] = model;
		ok = ok && relations && model;
	}
	out["result"] = result;
	emit(out);
	return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_lemma46(int grid, const std::string& c_text, double margin, const std::string& profile) {
	double c;
	try {
		c = parse_rational(c_text);
	} catch (const std::exception& err) {
		std::cerr << "usage error: bad rational '" << c_text << "': " << err.what() << "\n";
		return kExitUsage;
	}
	BumpProfile bump = profile == "poly" ? BumpProfile::polynomial(c) : BumpProfile::exponential(c);
	json out{{"schema", 1},
	         {"command", "lemma46"},
	         {"grid", grid},
	         {"c", c_text},
	         {"margin", margin},
	         {"profile", profile}};
	RankSweepResult sweep;
	try {
		sweep = verify_no_rank2(grid, bump, margin);
	} catch (const std::invalid_argument& err) {
		std::cerr << "usage error: " << err.what() << "\n";
		return kExitUsage;
	}
	json result;
	result["ok"] = sweep.ok;
	result["min_entry_max"] = sweep.min_entry_max;
	result["cells_checked"] = sweep.cells_checked;
	result["elimination_ok"] = sweep.elimination_ok;
	result["sigma2"] = sigma2_model();
	if (!sweep.ok) {
		result["worst_cell"] = json::array({sweep.worst_x, sweep.worst_y});
	}
	out["result"] = result;
	emit(out);
	return sweep.ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"exact calculator for plumbed 4-manifold forms, matrix-level handle calculus,\n"
	             "and the Smale-invariant pipelines of the two covering families"};
	app.require_subcommand(1);

	std::string eval_text;
	auto* eval = app.add_subcommand("eval", "invariants of a 4-manifold expression");
	eval->add_option("expr", eval_text, "expression, e.g. \"P(A,4;2) + SxS\"")->required();

	std::string family_which;
	long long family_n = 1;
	bool family_trace = false;
	auto* family = app.add_subcommand("family", "Smale invariant pipeline for one family member");
	family->add_option("which", family_which, "f (lens-space family) or g (dicyclic family)")
	    ->required()
	    ->check(CLI::IsMember({"f", "g"}));
	family->add_option("--n", family_n, "family parameter, n >= 1")->required();
	family->add_flag("--trace", family_trace, "include the bookkeeping trace");

	std::string verify_name, verify_range = "1..4";
	double verify_budget = 1.0;
	auto* verify = app.add_subcommand("verify", "compare both sides of a family identity");
	verify->add_option("identity", verify_name, "A-stable | A-blowdown | D-stable | D-blowdown | cover-Estar")
	    ->required();
	verify->add_option("range", verify_range, "parameter range, e.g. 4 or 2..6")->required();
	verify->add_option("--budget", verify_budget, "search budget scale (default 1.0)");

	auto* kirby = app.add_subcommand("kirby", "matrix-level handle calculus");
	std::string kirby_script;
	auto* kirby_run = kirby->add_subcommand("run", "replay a move script and check the expectation");
	kirby_run->add_option("script", kirby_script, "path to a .ks move script")->required();
	kirby->require_subcommand(1);

	auto* group = app.add_subcommand("group", "boundary fundamental group arithmetic");
	long long group_n = 1;
	bool group_check = false;
	auto* group_dic = group->add_subcommand("dic", "dicyclic group of order 4n");
	group_dic->add_option("--n", group_n, "group parameter, n >= 1")->required();
	group_dic->add_flag("--check", group_check, "also verify relations and the quaternion model by enumeration");
	group->require_subcommand(1);

	int l46_grid = 256;
	std::string l46_c = "1/20";
	double l46_margin = 1e-6;
	std::string l46_profile = "exp";
	auto* l46 = app.add_subcommand("lemma46", "no-rank-2-points sweep for the branched-cover local model");
	l46->add_option("--grid", l46_grid, "grid resolution (>= 64, default 256)");
	l46->add_option("--c", l46_c, "transition start, rational in (0,1/2), e.g. 1/20");
	l46->add_option("--margin", l46_margin, "smallest allowed max-entry (default 1e-6)");
	l46->add_option("--profile", l46_profile, "bump profile: exp or poly")->check(CLI::IsMember({"exp", "poly"}));

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		if (e.get_exit_code() == 0) return app.exit(e);  // --help
		app.exit(e);
		return kExitUsage;
	}

	try {
		if (*eval) return cmd_eval(eval_text);
		if (*family) return cmd_family(family_which[0], family_n, family_trace);
		if (*verify) return cmd_verify(verify_name, verify_range, verify_budget);
		if (*kirby_run) return cmd_kirby_run(kirby_script);
		if (*group_dic) return cmd_group_dic(group_n, group_check);
		if (*l46) return cmd_lemma46(l46_grid, l46_c, l46_margin, l46_profile);
	} catch (const LedgerError& err) {
		std::cerr << "internal inconsistency: " << err.what() << "\n";
		return kExitInternal;
	} catch (const std::exception& err) {
		std::cerr << "error: " << err.what() << "\n";
		return kExitUsage;
	}
	return kExitUsage;
}
