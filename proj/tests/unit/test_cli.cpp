#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
	int exit_code = -1;
	std::string out;
};

RunResult run_cli(const std::string& args) {
	const std::string cmd = std::string(IMMCALC_CLI_PATH) + " " + args + " 2>/dev/null";
	std::array<char, 4096> buf{};
	RunResult r;
	FILE* pipe = popen(cmd.c_str(), "r");
	REQUIRE(pipe != nullptr);
	size_t got;
	while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
	int status = pclose(pipe);
	r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
	return r;
}

}  // namespace

TEST_CASE("eval emits the documented payload") {
	RunResult r = run_cli("eval \"P(A,4;2) + SxS\"");
	REQUIRE(r.exit_code == 0);
	json j = json::parse(r.out);
	CHECK(j["schema"] == 1);
	CHECK(j["command"] == "eval");
	CHECK(j["result"]["chi"] == 7);
	CHECK(j["result"]["sigma"] == 4);
	CHECK(j["result"]["det"] == -5);
	CHECK(j["result"]["parity"] == "even");
	CHECK(j["result"]["boundary"]["kind"] == "lens_space");
	CHECK(j["result"]["boundary"]["p"] == 5);
}

TEST_CASE("eval examples from the contract") {
	json j = json::parse(run_cli("eval \"E(-1)\"").out);
	CHECK(j["result"]["chi"] == 2);
	CHECK(j["result"]["sigma"] == -1);
	CHECK(j["result"]["det"] == -1);

	json k = json::parse(run_cli("eval \"CP2 + CP2 + CP2bar\"").out);
	CHECK(k["result"]["sigma"] == 1);
	CHECK(k["result"]["det"] == -1);
	CHECK(k["result"]["parity"] == "odd");
}

TEST_CASE("parse errors exit 2") {
	CHECK(run_cli("eval \"P(A,0;2)\"").exit_code == 2);
	CHECK(run_cli("eval \"Nope\"").exit_code == 2);
	CHECK(run_cli("family f --n 0").exit_code == 2);
	CHECK(run_cli("family h --n 1").exit_code == 2);
	CHECK(run_cli("nonsense").exit_code == 2);
	CHECK(run_cli("kirby run /does/not/exist.ks").exit_code == 2);
}

TEST_CASE("family output matches the closed forms") {
	json f6 = json::parse(run_cli("family f --n 6").out);
	CHECK(f6["result"]["omega"] == json::array({35, 0}));
	CHECK(f6["result"]["generator"] == true);
	CHECK(f6["result"]["bordism"] == 11);
	CHECK(f6["result"]["trace"].empty());

	json g2 = json::parse(run_cli("family g --n 2").out);
	CHECK(g2["result"]["omega"] == json::array({39, 0}));
	CHECK(g2["result"]["bordism"] == 15);
	CHECK(g2["result"]["generator"] == false);

	json f1 = json::parse(run_cli("family f --n 1").out);
	CHECK(f1["result"]["omega"] == json::array({0, 0}));

	json traced = json::parse(run_cli("family f --n 2 --trace").out);
	CHECK(traced["result"]["trace"].size() >= 6);
}

TEST_CASE("family output is byte-for-byte deterministic") {
	RunResult a = run_cli("family g --n 5 --trace");
	RunResult b = run_cli("family g --n 5 --trace");
	CHECK(a.out == b.out);
	CHECK(!a.out.empty());
}

TEST_CASE("verify subcommand certifies ranges and reports parity findings") {
	RunResult r = run_cli("verify A-blowdown 2..4");
	REQUIRE(r.exit_code == 0);
	json j = json::parse(r.out);
	CHECK(j["ok"] == true);
	CHECK(j["results"].size() == 3);
	for (const auto& item : j["results"]) {
		CHECK(item["ok"] == true);
		CHECK(item["literal"]["congruence"]["status"] == "yes");
		CHECK(item["literal"]["congruence"]["certificate"]["verified"] == true);
	}

	json st = json::parse(run_cli("verify A-stable 2").out);
	auto& entry = st["results"][0];
	CHECK(entry["literal"]["mismatches"] == json::array({"parity"}));
	CHECK(entry["twisted"]["congruence"]["status"] == "yes");

	CHECK(run_cli("verify X-stable 2").exit_code == 2);
	CHECK(run_cli("verify A-stable 6..2").exit_code == 2);
}

TEST_CASE("kirby run replays the corpus") {
	RunResult r = run_cli(std::string("kirby run ") + IMMCALC_CORPUS_DIR + "/cp2_trade.ks");
	REQUIRE(r.exit_code == 0);
	json j = json::parse(r.out);
	CHECK(j["result"]["status"] == "pass");
	CHECK(j["result"]["trace"].size() == 5);

	RunResult bad = run_cli(std::string("kirby run ") + IMMCALC_TEST_DATA_DIR + "/blowdown_linked_fail.ks");
	CHECK(bad.exit_code == 1);
	json jb = json::parse(bad.out);
	CHECK(jb["result"]["status"] == "fail");
	CHECK(jb["result"]["failed_step"] == 1);
}

TEST_CASE("group dic emits order, abelianization and extension") {
	json j = json::parse(run_cli("group dic --n 5").out);
	CHECK(j["result"]["order"] == 20);
	CHECK(j["result"]["abelianization"] == "Z4");
	CHECK(j["result"]["extension_ok"] == true);

	json k = json::parse(run_cli("group dic --n 6 --check").out);
	CHECK(k["result"]["abelianization"] == "Z2xZ2");
	CHECK(k["result"]["relations_ok"] == true);
	CHECK(k["result"]["quaternion_model_ok"] == true);
}

TEST_CASE("lemma46 sweep output") {
	RunResult r = run_cli("lemma46 --grid 64 --c 1/20 --margin 1e-6");
	REQUIRE(r.exit_code == 0);
	json j = json::parse(r.out);
	CHECK(j["result"]["ok"] == true);
	CHECK(j["result"]["sigma2"] == 0);
	CHECK(j["result"]["elimination_ok"] == true);
	CHECK(j["result"]["cells_checked"].get<long long>() > 3000);

	CHECK(run_cli("lemma46 --grid 8").exit_code == 2);
	CHECK(run_cli("lemma46 --c 3/4").exit_code == 2);
	CHECK(run_cli("lemma46 --c 1/0").exit_code == 2);
}

TEST_CASE("degenerate boundary is reported, not crashed") {
	RunResult r = run_cli("eval \"E(0)\"");
	REQUIRE(r.exit_code == 0);
	json j = json::parse(r.out);
	CHECK(j["result"]["boundary"]["kind"] == "not_rational_homology_sphere");
	CHECK(j["result"]["det"] == 0);
}
