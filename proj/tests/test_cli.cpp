#include "support.hpp"

#include "ftspace/soberdrunk.hpp"
#include "ftspace/universal.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace testing;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI with stderr discarded and returns its exit status and stdout.
Run cli(const std::string& args) {
    std::string cmd = std::string(FTSPACE_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string fx(const std::string& name) { return "'" + fixture(name) + "'"; }

doc::json report(const Run& r) { return doc::parse_text(r.out); }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "ftspace_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("validate matches the library") {
    for (const auto& name : space_fixtures()) {
        CAPTURE(name);
        auto r = cli("--json validate " + fx(name));
        CHECK(r.status == 0);
        CHECK(report(r)["valid"] == true);
    }
    auto broken = cli("--json validate " + fx("broken_introspection.json"));
    CHECK(broken.status == 1);
    auto j = report(broken);
    CHECK(j["command"] == "validate");
    CHECK(j["violations"][0]["kind"] == "introspection");
    CHECK(j["violations"][0]["state"] == "x");
    CHECK(cli("validate " + fx("broken_measurability.json")).status == 1);
    CHECK(cli("validate " + fx("malformed_rational.json")).status == 2);
    CHECK(cli("validate " + fx("absent.json")).status == 2);
    CHECK(cli("--bogus").status == 2);
    CHECK(cli("").status == 2);
}

TEST_CASE("eval and describe match the library") {
    auto space = load_fixture("three_distinct.json");
    auto exprs = doc::load_expr_list(doc::read_file(fixture("exprs.json")));
    auto r = cli("--json eval " + fx("three_distinct.json") + " --expr-file " + fx("exprs.json"));
    REQUIRE(r.status == 0);
    auto results = report(r)["results"];
    REQUIRE(results.size() == exprs.size());
    for (std::size_t k = 0; k < exprs.size(); ++k) {
        CHECK(results[k]["expr"] == lang::to_string(exprs[k]));
        CHECK(results[k]["depth"] == lang::depth(exprs[k]));
        CHECK(results[k]["states"] == doc::state_names(space, lang::eval(space, exprs[k])));
    }
    CHECK(cli("eval " + fx("three_distinct.json") + " --expr 'and(nat(h)'").status == 2);
    CHECK(cli("eval " + fx("three_distinct.json") + " --expr 'nat(rain)'").status == 2);

    for (std::size_t d : {0, 1, 3}) {
        auto fp = report(cli("--json describe " + fx("three_distinct.json") + " y --depth " + std::to_string(d)));
        CHECK(fp["fingerprint"] == universal::desc_fingerprint(space, 1, d));
    }
    CHECK(cli("describe " + fx("three_distinct.json") + " nobody").status == 2);
}

TEST_CASE("minimize matches the library") {
    for (const auto& name : space_fixtures()) {
        CAPTURE(name);
        auto s = load_fixture(name);
        auto qs = universal::quotient(s);
        auto out = scratch("q_" + name);
        auto r = cli("--json minimize " + fx(name) + " --out '" + out.string() + "'");
        REQUIRE(r.status == 0);
        auto j = report(r);
        CHECK(j["quotient_states"] == qs.space.size());
        CHECK(j["quotient_valid"] == true);
        CHECK(j["quotient"] == doc::emit_space(qs.space));
        CHECK(slurp(out) == doc::dump(doc::emit_space(qs.space)));
    }
}

TEST_CASE("morphism matches the library") {
    auto dup = load_fixture("duplicated.json");
    auto ok = cli("--json morphism " + fx("duplicated.json") + " " + fx("three_distinct.json") + " --map " +
                  fx("duplicated_fold_map.json"));
    CHECK(ok.status == 0);
    CHECK(report(ok)["ok"] == true);
    auto bad = cli("--json morphism " + fx("three_distinct.json") + " " + fx("three_distinct.json") + " --map " +
                   fx("three_swap_map.json"));
    CHECK(bad.status == 1);
    CHECK(report(bad)["witness"] == "x");

    auto all = report(cli("--json morphism " + fx("duplicated.json") + " " + fx("duplicated.json") + " --enumerate"));
    auto maps = types::enumerate_morphisms(dup, dup);
    REQUIRE(all["count"] == maps.size());
    for (std::size_t k = 0; k < maps.size(); ++k) CHECK(all["maps"][k] == doc::emit_map(maps[k], dup, dup)["map"]);
    CHECK(cli("--max-maps 3 morphism " + fx("duplicated.json") + " " + fx("duplicated.json") + " --enumerate").status ==
          2);
}

TEST_CASE("extend matches the library") {
    auto m = doc::load_measure(doc::read_file(fixture("four_point_measure.json")));
    auto e = doc::named_subset(m.universe, {"1", "3"});
    auto lm = measure::los_marczewski_extend(m.measure, e, parse_rational("1/2"));
    auto r = cli("extend " + fx("four_point_measure.json") + " --set 1,3 --p 1/2");
    REQUIRE(r.status == 0);
    CHECK(r.out == doc::dump(doc::emit_measure({m.universe, lm})));
    CHECK(cli("extend " + fx("four_point_measure.json") + " --set 1,3 --p 3/2").status == 2);
    CHECK(cli("extend " + fx("four_point_measure.json") + " --set 1,2,3 --p 1/2").status == 2);

    auto m3 = doc::load_measure(doc::read_file(fixture("three_point_measure.json")));
    auto f3 = doc::load_field(doc::read_file(fixture("three_point_powerset.json")));
    auto ht = cli("extend " + fx("three_point_measure.json") + " --target-field " + fx("three_point_powerset.json"));
    REQUIRE(ht.status == 0);
    CHECK(ht.out == doc::dump(doc::emit_measure({m3.universe, measure::horn_tarski_extend(m3.measure, f3.field)})));
}

TEST_CASE("soberdrunk commands") {
    auto out = scratch("w2.json");
    auto b = cli("--json soberdrunk build 2 --out '" + out.string() + "'");
    REQUIRE(b.status == 0);
    CHECK(report(b)["states"] == 32);
    CHECK(slurp(out) == doc::dump(doc::emit_space(sober::soberdrunk_space(2))));
    CHECK(cli("soberdrunk build 0").status == 2);
    CHECK(cli("--max-states 100 soberdrunk build 3").status == 2);

    auto s = report(cli("--json soberdrunk separate 3 1 --player b"));
    auto lib = sober::separation_demo(3, 1, sober::kPlayerB);
    CHECK(s["ok"] == true);
    CHECK(s["u"] == sober::to_string(lib.u));
    CHECK(s["psi"] == lang::to_string(lib.psi));
    CHECK(cli("soberdrunk separate 2 2").status == 2);

    CHECK(cli("soberdrunk lemmas 2").status == 0);
    CHECK(cli("soberdrunk lemmas 9").status == 2);
}

TEST_CASE("output is deterministic") {
    std::vector<std::string> runs{"--json minimize " + fx("mixed4.json"), "--json validate " + fx("coarse_field.json"),
                                  "--json soberdrunk build 2", "soberdrunk lemmas 1"};
    for (const auto& args : runs) {
        CAPTURE(args);
        auto a = cli(args);
        auto b = cli(args);
        CHECK(a.status == b.status);
        CHECK(a.out == b.out);
    }
}
