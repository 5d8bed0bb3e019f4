// ftspace: command-line front end over the library.
//
// Exit codes: 0 success or valid, 1 a property violation was found, 2 input error.

#include "ftspace/document.hpp"
#include "ftspace/error.hpp"
#include "ftspace/lemmas.hpp"
#include "ftspace/universal.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ftspace;
using doc::json;
using types::TypeSpace;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Options {
    bool json_out = false;
    std::size_t max_states = 512;
    std::size_t max_maps = 1'000'000;
};

TypeSpace load_space_file(const std::string& path, const Options& opt) {
    TypeSpace s = doc::load_space(doc::read_file(path));
    if (s.size() > opt.max_states)
        throw BudgetExceeded(path + " has " + std::to_string(s.size()) + " states, above --max-states");
    return s;
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write '" + path + "'");
    out << doc::dump(j);
}

json report(const std::string& command) {
    json j = doc::header("report");
    j["command"] = command;
    return j;
}

std::vector<std::string> sorted_names(const TypeSpace& space, const Subset& s) {
    std::vector<std::string> out;
    for (auto m : elements(s)) out.push_back(space.states()[m]);
    std::sort(out.begin(), out.end());
    return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
    return out;
}

json log_json(const sober::CheckLog& log) {
    json j;
    j["checks"] = log.checks;
    j["failed"] = log.failed;
    j["failures"] = log.failures;
    return j;
}

void print_log(const std::string& label, const sober::CheckLog& log) {
    std::cout << label << ": " << (log.ok() ? "pass" : "FAIL") << " (" << log.checks << " checks, " << log.failed
              << " failed)\n";
    for (const auto& f : log.failures) std::cout << "  " << f << "\n";
}

// --- commands --------------------------------------------------------------------------

int cmd_validate(const std::string& file, const Options& opt) {
    TypeSpace space = load_space_file(file, opt);
    auto rep = types::validate(space);
    if (opt.json_out) {
        json j = report("validate");
        j["valid"] = rep.valid();
        json vs = json::array();
        for (const auto& v : rep.violations) {
            json x;
            x["kind"] = types::to_string(v.kind);
            x["player"] = v.player ? json(space.players()[*v.player]) : json(nullptr);
            x["state"] = space.states()[v.state];
            x["detail"] = v.detail;
            vs.push_back(std::move(x));
        }
        j["violations"] = std::move(vs);
        json strong = json::array();
        for (auto [i, m] : rep.strong_introspection_failures)
            strong.push_back(json::array({space.players()[i], space.states()[m]}));
        j["strong_introspection_failures"] = std::move(strong);
        std::cout << doc::dump(j);
    } else {
        if (rep.valid())
            std::cout << "valid\n";
        else
            std::cout << "invalid: " << rep.violations.size() << " violation(s)\n";
        for (const auto& v : rep.violations) {
            std::cout << "  " << types::to_string(v.kind);
            if (v.player) std::cout << " player " << space.players()[*v.player];
            std::cout << " state " << space.states()[v.state] << ": " << v.detail << "\n";
        }
        for (auto [i, m] : rep.strong_introspection_failures)
            std::cout << "  note: T_" << space.players()[i] << "(" << space.states()[m]
                      << ") does not give its own type class mass 1\n";
    }
    return rep.valid() ? kOk : kViolation;
}

void require_valid(const TypeSpace& space, const std::string& file) {
    if (!types::validate(space).valid())
        throw DomainError(file + " is not a valid type space (run 'ftspace validate')");
}

int cmd_eval(const std::string& file, const std::vector<std::string>& exprs, const std::string& expr_file,
             const Options& opt) {
    TypeSpace space = load_space_file(file, opt);
    require_valid(space, file);
    std::vector<lang::Expr> list;
    for (const auto& e : exprs) list.push_back(lang::parse(e, &space.nature()));
    if (!expr_file.empty())
        for (auto& e : doc::load_expr_list(doc::read_file(expr_file), &space.nature())) list.push_back(e);
    if (list.empty()) throw DomainError("nothing to evaluate: give --expr or --expr-file");
    lang::Evaluator ev(space);
    json results = json::array();
    for (const auto& e : list) {
        auto names = sorted_names(space, ev(e));
        if (opt.json_out) {
            json r;
            r["expr"] = lang::to_string(e);
            r["depth"] = lang::depth(e);
            r["states"] = names;
            results.push_back(std::move(r));
        } else {
            std::cout << lang::to_string(e) << "\n  depth " << lang::depth(e) << ": [" << join(names) << "]\n";
        }
    }
    if (opt.json_out) {
        json j = report("eval");
        j["results"] = std::move(results);
        std::cout << doc::dump(j);
    }
    return kOk;
}

int cmd_describe(const std::string& file, const std::string& state, std::size_t depth, const Options& opt) {
    TypeSpace space = load_space_file(file, opt);
    require_valid(space, file);
    auto m = space.find_state(state);
    if (!m) throw DomainError("unknown state '" + state + "'");
    auto token = universal::desc_fingerprint(space, *m, depth);
    if (opt.json_out) {
        json j = report("describe");
        j["state"] = state;
        j["depth"] = depth;
        j["fingerprint"] = token;
        std::cout << doc::dump(j);
    } else {
        std::cout << token << "\n";
    }
    return kOk;
}

int cmd_minimize(const std::string& file, const std::string& out, const Options& opt) {
    TypeSpace space = load_space_file(file, opt);
    require_valid(space, file);
    auto qs = universal::quotient(space);
    bool ok = types::validate(qs.space).valid() && types::is_type_morphism(space, qs.space, qs.q).ok;
    json qdoc = doc::emit_space(qs.space);
    if (!out.empty()) write_file(out, qdoc);
    if (opt.json_out) {
        json j = report("minimize");
        j["states"] = space.size();
        j["quotient_states"] = qs.space.size();
        j["stable_depth"] = qs.tower.stable_depth;
        j["block_counts"] = qs.tower.block_count;
        j["map"] = doc::emit_map(qs.q, space, qs.space)["map"];
        j["quotient_valid"] = ok;
        j["quotient"] = std::move(qdoc);
        std::cout << doc::dump(j);
    } else {
        std::cout << "states: " << space.size() << " -> " << qs.space.size() << "\n";
        std::cout << "stable depth: " << qs.tower.stable_depth << "\n";
        std::cout << "blocks per depth:";
        for (auto c : qs.tower.block_count) std::cout << " " << c;
        std::cout << "\n";
        for (std::size_t m = 0; m < space.size(); ++m)
            std::cout << "  " << space.states()[m] << " -> " << qs.space.states()[qs.q[m]] << "\n";
        std::cout << "quotient " << (ok ? "valid, quotient map is a type morphism" : "FAILED validation") << "\n";
        if (!out.empty()) std::cout << "wrote " << out << "\n";
    }
    return ok ? kOk : kViolation;
}

int cmd_morphism(const std::string& src_file, const std::string& dst_file, const std::string& map_file,
                 bool enumerate, const Options& opt) {
    TypeSpace src = load_space_file(src_file, opt);
    TypeSpace dst = load_space_file(dst_file, opt);
    if (enumerate == !map_file.empty()) throw DomainError("give exactly one of --map and --enumerate");
    if (enumerate) {
        auto maps = types::enumerate_morphisms(src, dst, opt.max_maps);
        if (opt.json_out) {
            json j = report("morphism");
            j["count"] = maps.size();
            json ms = json::array();
            for (const auto& f : maps) ms.push_back(doc::emit_map(f, src, dst)["map"]);
            j["maps"] = std::move(ms);
            std::cout << doc::dump(j);
        } else {
            std::cout << maps.size() << " type morphism(s)\n";
            for (const auto& f : maps) {
                std::vector<std::string> parts;
                for (std::size_t m = 0; m < f.size(); ++m) parts.push_back(src.states()[m] + "->" + dst.states()[f[m]]);
                std::cout << "  " << join(parts, " ") << "\n";
            }
        }
        return kOk;
    }
    auto f = doc::load_map(doc::read_file(map_file), src, dst);
    auto rep = types::is_type_morphism(src, dst, f);
    if (opt.json_out) {
        json j = report("morphism");
        j["ok"] = rep.ok;
        j["failure"] = rep.failure;
        j["witness"] = rep.witness ? json(src.states()[*rep.witness]) : json(nullptr);
        std::cout << doc::dump(j);
    } else if (rep.ok) {
        std::cout << "type morphism\n";
    } else {
        std::cout << "not a type morphism: " << rep.failure;
        if (rep.witness) std::cout << " (at " << src.states()[*rep.witness] << ")";
        std::cout << "\n";
    }
    return rep.ok ? kOk : kViolation;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_extend(const std::string& file, const std::string& set, const std::string& p, const std::string& field_file,
               const std::string& out) {
    auto m = doc::load_measure(doc::read_file(file));
    doc::NamedMeasure result{m.universe, m.measure};
    if (!field_file.empty()) {
        if (!set.empty() || !p.empty()) throw DomainError("--target-field excludes --set and --p");
        auto f = doc::load_field(doc::read_file(field_file));
        if (f.universe != m.universe) throw DomainError("target field is on a different universe");
        result.measure = measure::horn_tarski_extend(m.measure, f.field);
    } else {
        if (set.empty() && p.empty()) throw DomainError("give --set and --p, or --target-field");
        if (p.empty()) throw DomainError("--set needs --p");
        Subset e = doc::named_subset(m.universe, split_names(set));
        result.measure = measure::los_marczewski_extend(m.measure, e, parse_rational(p));
    }
    json j = doc::emit_measure(result);
    if (!out.empty())
        write_file(out, j);
    else
        std::cout << doc::dump(j);
    return kOk;
}

int cmd_build(std::size_t n, const std::string& out, const Options& opt) {
    auto tower = sober::build_beliefs(n, opt.max_states);
    auto space = sober::soberdrunk_space(tower);
    auto valid = types::validate(space).valid();
    auto thm = sober::check_belief_theorem(tower);
    auto ind = sober::check_induction(tower);
    auto bits = sober::check_bit_identities(space, n);
    if (!out.empty()) write_file(out, doc::emit_space(space));
    bool ok = valid && thm.ok() && ind.ok() && bits.ok();
    if (opt.json_out) {
        json j = report("soberdrunk build");
        j["n"] = n;
        j["states"] = space.size();
        j["valid"] = valid;
        j["theorem"]["a"] = log_json(thm.a);
        j["theorem"]["b"] = log_json(thm.b);
        j["theorem"]["c"] = log_json(thm.c);
        j["theorem"]["d"] = log_json(thm.d);
        j["theorem"]["e"] = "vacuous at finite levels";
        j["theorem"]["f"] = log_json(thm.f);
        j["induction"] = log_json(ind);
        j["bit_identities"] = log_json(bits);
        std::cout << doc::dump(j);
    } else {
        std::cout << "W^" << n << ": " << space.size() << " states, " << (valid ? "valid" : "INVALID") << "\n";
        print_log("(a) constant on blocks", thm.a);
        print_log("(b) block mass 1", thm.b);
        print_log("(c) nature mass", thm.c);
        print_log("(d) opponent bit mass", thm.d);
        std::cout << "(e) vacuous at finite levels\n";
        print_log("(f) cylinder masses", thm.f);
        print_log("induction conditions", ind);
        print_log("bit identities", bits);
        if (!out.empty()) std::cout << "wrote " << out << "\n";
    }
    return ok ? kOk : kViolation;
}

int cmd_separate(std::size_t n, std::optional<std::size_t> alpha, const std::string& player, const Options& opt) {
    std::size_t i = player == "a" ? sober::kPlayerA : player == "b" ? sober::kPlayerB : 2;
    if (i == 2) throw DomainError("player must be a or b");
    if (n < 1) throw DomainError("n must be at least 1");
    std::size_t a = alpha.value_or(n - 1);
    auto tower = sober::build_beliefs(n, opt.max_states);
    auto rep = sober::separation_demo(sober::soberdrunk_space(tower), n, a, i);
    if (opt.json_out) {
        json j = report("soberdrunk separate");
        j["n"] = n;
        j["alpha"] = a;
        j["player"] = player;
        j["u"] = sober::to_string(rep.u);
        j["w"] = sober::to_string(rep.w);
        j["psi"] = lang::to_string(rep.psi);
        j["psi_depth"] = rep.psi_depth;
        j["restrictions_agree"] = rep.restrictions_agree;
        j["fingerprints_equal"] = rep.fingerprints_equal;
        j["fingerprints_differ_next"] = rep.fingerprints_differ_next;
        j["corpus_size"] = rep.corpus_size;
        j["corpus_agrees"] = rep.corpus_agrees;
        j["psi_separates"] = rep.psi_separates;
        j["ok"] = rep.ok();
        std::cout << doc::dump(j);
    } else {
        auto yn = [](bool b) { return b ? "yes" : "NO"; };
        std::cout << "u = " << sober::to_string(rep.u) << "\nw = " << sober::to_string(rep.w) << "\n";
        std::cout << "psi = " << lang::to_string(rep.psi) << " (depth " << rep.psi_depth << ")\n";
        std::cout << "agree below " << a << ": " << yn(rep.restrictions_agree) << "\n";
        std::cout << "equal fingerprints at depth " << a << ": " << yn(rep.fingerprints_equal) << "\n";
        std::cout << "different fingerprints at depth " << a + 1 << ": " << yn(rep.fingerprints_differ_next) << "\n";
        std::cout << "agree on all " << rep.corpus_size << " corpus expressions of depth <= " << a << ": "
                  << yn(rep.corpus_agrees) << "\n";
        std::cout << "psi holds at u and fails at w: " << yn(rep.psi_separates) << "\n";
    }
    return rep.ok() ? kOk : kViolation;
}

int cmd_lemmas(std::size_t n, bool omega, std::size_t positions, std::size_t bases, const Options& opt) {
    auto reports = sober::check_lemmas_finite(n);
    if (omega)
        for (auto& r : sober::check_lemmas_omega(positions, bases)) reports.push_back(std::move(r));
    bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.log.ok(); });
    if (opt.json_out) {
        json j = report("soberdrunk lemmas");
        json rs = json::array();
        for (const auto& r : reports) {
            json x = log_json(r.log);
            x["check"] = r.lemma;
            x["scope"] = r.scope;
            rs.push_back(std::move(x));
        }
        j["lemmas"] = std::move(rs);
        j["ok"] = ok;
        std::cout << doc::dump(j);
    } else {
        for (const auto& r : reports) print_log(r.lemma + ", " + r.scope, r.log);
    }
    return ok ? kOk : kViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite type spaces, belief expressions, description quotients and sober-drunk spaces"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json_out, "Print a machine-readable report");
    app.add_option("--max-states", opt.max_states, "Largest state count to load or build")->capture_default_str();
    app.add_option("--max-maps", opt.max_maps, "Largest map count to enumerate")->capture_default_str();

    std::string file, file2, state, out, map_file, expr_file, set, p, field_file, player = "a";
    std::vector<std::string> exprs;
    std::size_t depth = 3, n = 0;
    std::optional<std::size_t> alpha;
    bool enumerate = false, omega = false;
    std::size_t positions = 5, bases = 2;

    auto* validate = app.add_subcommand("validate", "Check every type-space axiom");
    validate->add_option("space", file, "Type space document")->required();

    auto* eval = app.add_subcommand("eval", "Evaluate expressions on a space");
    eval->add_option("space", file, "Type space document")->required();
    eval->add_option("--expr", exprs, "Expression text (repeatable)");
    eval->add_option("--expr-file", expr_file, "expr_list document");

    auto* describe = app.add_subcommand("describe", "Description fingerprint of a state");
    describe->add_option("space", file, "Type space document")->required();
    describe->add_option("state", state, "State name")->required();
    describe->add_option("--depth", depth, "Expression depth")->capture_default_str();

    auto* minimize = app.add_subcommand("minimize", "Description quotient of a space");
    minimize->add_option("space", file, "Type space document")->required();
    minimize->add_option("--out", out, "Write the quotient space here");

    auto* morphism = app.add_subcommand("morphism", "Check or enumerate type morphisms");
    morphism->add_option("source", file, "Source type space")->required();
    morphism->add_option("target", file2, "Target type space")->required();
    morphism->add_option("--map", map_file, "map document");
    morphism->add_flag("--enumerate", enumerate, "List every type morphism");

    auto* extend = app.add_subcommand("extend", "Extend a measure to a set or to a finer field");
    extend->add_option("measure", file, "measure document")->required();
    extend->add_option("--set", set, "Comma-separated elements of E");
    extend->add_option("--p", p, "Value of the extension on E");
    extend->add_option("--target-field", field_file, "field document refining the measure's field");
    extend->add_option("--out", out, "Write the extended measure here");

    auto* sober_cmd = app.add_subcommand("soberdrunk", "Sober-drunk spaces");
    sober_cmd->require_subcommand(1);
    auto* build = sober_cmd->add_subcommand("build", "Build W^n with its beliefs and check them");
    build->add_option("n", n, "Level")->required();
    build->add_option("--out", out, "Write the space here");
    auto* separate = sober_cmd->add_subcommand("separate", "Two states separated only at depth alpha+1");
    separate->add_option("n", n, "Level")->required();
    separate->add_option("alpha", alpha, "Depth at which the states still agree (default n-1)");
    separate->add_option("--player", player, "a or b")->capture_default_str();
    auto* lemmas = sober_cmd->add_subcommand("lemmas", "Exhaustive combinatorial checks up to level n");
    lemmas->add_option("n", n, "Largest finite level (1 to 4)")->required();
    lemmas->add_flag("--omega", omega, "Also check level w+1");
    lemmas->add_option("--positions", positions, "Level w+1: finite support positions 0..N")->capture_default_str();
    lemmas->add_option("--bases", bases, "Level w+1: cylinder bases 0..N")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*validate) return cmd_validate(file, opt);
        if (*eval) return cmd_eval(file, exprs, expr_file, opt);
        if (*describe) return cmd_describe(file, state, depth, opt);
        if (*minimize) return cmd_minimize(file, out, opt);
        if (*morphism) return cmd_morphism(file, file2, map_file, enumerate, opt);
        if (*extend) return cmd_extend(file, set, p, field_file, out);
        if (*build) return cmd_build(n, out, opt);
        if (*separate) return cmd_separate(n, alpha, player, opt);
        if (*lemmas) return cmd_lemmas(n, omega, positions, bases, opt);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kInputError;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
