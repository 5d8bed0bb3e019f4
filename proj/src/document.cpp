#include "ftspace/document.hpp"

#include "ftspace/error.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ftspace::doc {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw SchemaError(msg); }

const json& need(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) bad(where + ": missing \"" + key + "\"");
    return obj.at(key);
}

std::string need_string(const json& v, const std::string& where) {
    if (!v.is_string()) bad(where + ": expected a string");
    return v.get<std::string>();
}

std::vector<std::string> need_names(const json& v, const std::string& where) {
    if (!v.is_array()) bad(where + ": expected an array of names");
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(need_string(x, where));
    return out;
}

Rational need_rational(const json& v, const std::string& where) {
    if (!v.is_string()) bad(where + ": rationals are written as strings like \"1/2\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
        bad(where + ": " + e.what());
    }
}

std::map<std::string, std::size_t> index_names(const std::vector<std::string>& names, const std::string& where) {
    std::map<std::string, std::size_t> out;
    for (std::size_t k = 0; k < names.size(); ++k)
        if (!out.emplace(names[k], k).second) bad(where + ": duplicate name '" + names[k] + "'");
    return out;
}

Subset subset_of(const std::map<std::string, std::size_t>& index, std::size_t n, const json& v,
                 const std::string& where) {
    Subset s(n);
    for (const auto& name : need_names(v, where)) {
        auto it = index.find(name);
        if (it == index.end()) bad(where + ": unknown element '" + name + "'");
        s.set(it->second);
    }
    return s;
}

json names_of(const std::vector<std::string>& universe, const Subset& s) {
    json out = json::array();
    for (auto e : elements(s)) out.push_back(universe[e]);
    return out;
}

json atoms_json(const std::vector<std::string>& universe, const SetField& field) {
    json out = json::array();
    for (const auto& a : field.atoms()) out.push_back(names_of(universe, a));
    return out;
}

SetField load_atoms(const std::map<std::string, std::size_t>& index, std::size_t n, const json& v,
                    const std::string& where) {
    if (!v.is_array()) bad(where + ": expected an array of atoms");
    std::vector<Subset> atoms;
    for (const auto& a : v) atoms.push_back(subset_of(index, n, a, where));
    try {
        return SetField::from_atoms(n, std::move(atoms));
    } catch (const DomainError& e) {
        bad(where + ": " + e.what());
    }
}

json measure_entries(const std::vector<std::string>& universe, const FAMeasure& mu) {
    json out = json::array();
    for (std::size_t k = 0; k < mu.field().atom_count(); ++k) {
        if (mu.weight(k) == 0) continue;
        json entry;
        entry["atom"] = names_of(universe, mu.field().atom(k));
        entry["mass"] = format_rational(mu.weight(k));
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace

json header(const std::string& kind) {
    json j;
    j["schema"] = "ftspace";
    j["version"] = kVersion;
    j["kind"] = kind;
    return j;
}

std::string kind_of(const json& doc) {
    if (!doc.is_object()) bad("document must be a JSON object");
    if (need_string(need(doc, "schema", "document"), "schema") != "ftspace") bad("not an ftspace document");
    const auto& v = need(doc, "version", "document");
    if (!v.is_number_integer() || v.get<int>() != kVersion)
        bad("unsupported document version (expected " + std::to_string(kVersion) + ")");
    return need_string(need(doc, "kind", "document"), "kind");
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// --- type spaces ---------------------------------------------------------------------

json emit_space(const TypeSpace& space) {
    json j = header("type_space");
    const auto& nature = space.nature();
    json nat;
    nat["points"] = nature.points();
    json events = json::object();
    for (const auto& [name, s] : nature.events()) {
        if (nature.has_point(name) && s.count() == 1 && s.test(nature.index_of(name))) continue;
        events[name] = names_of(nature.points(), s);
    }
    nat["events"] = std::move(events);
    j["nature"] = std::move(nat);
    j["players"] = space.players();
    j["states"] = space.states();
    if (!space.field().is_powerset()) j["field"]["atoms"] = atoms_json(space.states(), space.field());
    json theta = json::object();
    for (std::size_t m = 0; m < space.size(); ++m) theta[space.states()[m]] = nature.points()[space.theta(m)];
    j["theta"] = std::move(theta);

    json measures = json::object();
    json types = json::object();
    std::map<std::string, std::string> names;  // serialized entries → name
    for (std::size_t i = 0; i < space.players().size(); ++i) {
        json row = json::object();
        for (std::size_t m = 0; m < space.size(); ++m) {
            json entries = measure_entries(space.states(), space.type(i, m));
            std::string key = entries.dump();
            auto it = names.find(key);
            if (it == names.end()) {
                std::string name = "m" + std::to_string(names.size());
                it = names.emplace(key, name).first;
                measures[name] = std::move(entries);
            }
            row[space.states()[m]] = it->second;
        }
        types[space.players()[i]] = std::move(row);
    }
    j["measures"] = std::move(measures);
    j["types"] = std::move(types);
    return j;
}

TypeSpace load_space(const json& doc) {
    if (kind_of(doc) != "type_space") bad("expected a type_space document");
    const auto& nat = need(doc, "nature", "type_space");
    auto points = need_names(need(nat, "points", "nature"), "nature.points");
    std::map<std::string, std::vector<std::string>> extra;
    if (nat.contains("events")) {
        if (!nat["events"].is_object()) bad("nature.events: expected an object");
        for (const auto& [name, members] : nat["events"].items())
            extra[name] = need_names(members, "nature.events." + name);
    }
    auto point_index = index_names(points, "nature.points");
    for (const auto& [name, members] : extra)
        for (const auto& p : members)
            if (!point_index.count(p)) bad("nature.events." + name + ": unknown point '" + p + "'");

    auto players = need_names(need(doc, "players", "type_space"), "players");
    auto states = need_names(need(doc, "states", "type_space"), "states");
    auto state_index = index_names(states, "states");
    index_names(players, "players");
    const std::size_t n = states.size();
    if (n == 0) bad("states: at least one state is required");

    SetField field = SetField::powerset(n);
    if (doc.contains("field")) field = load_atoms(state_index, n, need(doc["field"], "atoms", "field"), "field.atoms");

    const auto& th = need(doc, "theta", "type_space");
    if (!th.is_object()) bad("theta: expected an object from states to points");
    std::vector<std::size_t> theta(n);
    for (std::size_t m = 0; m < n; ++m) {
        if (!th.contains(states[m])) bad("theta: no value for state '" + states[m] + "'");
        auto p = need_string(th[states[m]], "theta." + states[m]);
        auto it = point_index.find(p);
        if (it == point_index.end()) bad("theta." + states[m] + ": unknown point '" + p + "'");
        theta[m] = it->second;
    }
    for (const auto& [s, v] : th.items())
        if (!state_index.count(s)) bad("theta: unknown state '" + s + "'");

    const auto& ms = need(doc, "measures", "type_space");
    if (!ms.is_object()) bad("measures: expected an object");
    std::map<std::string, FAMeasure> measures;
    for (const auto& [name, entries] : ms.items()) {
        const std::string where = "measures." + name;
        if (!entries.is_array()) bad(where + ": expected an array of {atom, mass}");
        std::vector<Rational> weights(field.atom_count());
        std::vector<bool> seen(field.atom_count(), false);
        for (const auto& e : entries) {
            Subset atom = subset_of(state_index, n, need(e, "atom", where), where);
            if (atom.none() || !field.contains(atom) || field.atom(field.atom_of(atom.find_first())) != atom)
                bad(where + ": " + to_string(atom) + " is not an atom of the field");
            std::size_t k = field.atom_of(atom.find_first());
            if (seen[k]) bad(where + ": atom listed twice");
            seen[k] = true;
            weights[k] = need_rational(need(e, "mass", where), where + ".mass");
        }
        measures.emplace(name, FAMeasure::unchecked(field, std::move(weights)));
    }

    const auto& ts = need(doc, "types", "type_space");
    if (!ts.is_object()) bad("types: expected an object");
    std::vector<std::vector<FAMeasure>> types;
    for (const auto& p : players) {
        if (!ts.contains(p)) bad("types: no entry for player '" + p + "'");
        const auto& row = ts[p];
        if (!row.is_object()) bad("types." + p + ": expected an object from states to measure names");
        std::vector<FAMeasure> t;
        for (const auto& s : states) {
            if (!row.contains(s)) bad("types." + p + ": no type at state '" + s + "'");
            auto name = need_string(row[s], "types." + p + "." + s);
            auto it = measures.find(name);
            if (it == measures.end()) bad("types." + p + "." + s + ": unknown measure '" + name + "'");
            t.push_back(it->second);
        }
        for (const auto& [s, v] : row.items())
            if (!state_index.count(s)) bad("types." + p + ": unknown state '" + s + "'");
        types.push_back(std::move(t));
    }
    for (const auto& [p, v] : ts.items())
        if (std::find(players.begin(), players.end(), p) == players.end()) bad("types: unknown player '" + p + "'");
    try {
        return TypeSpace(NatureSpace(points, extra), players, states, field, theta, std::move(types));
    } catch (const DomainError& e) {
        bad(e.what());
    }
}

// --- measures and fields -------------------------------------------------------------

json emit_field(const NamedField& f) {
    json j = header("field");
    j["universe"] = f.universe;
    j["atoms"] = atoms_json(f.universe, f.field);
    return j;
}

NamedField load_field(const json& doc) {
    if (kind_of(doc) != "field") bad("expected a field document");
    auto universe = need_names(need(doc, "universe", "field"), "universe");
    if (universe.empty()) bad("universe: at least one element is required");
    auto index = index_names(universe, "universe");
    return {universe, load_atoms(index, universe.size(), need(doc, "atoms", "field"), "atoms")};
}

json emit_measure(const NamedMeasure& m) {
    json j = header("measure");
    j["universe"] = m.universe;
    j["atoms"] = atoms_json(m.universe, m.measure.field());
    json w = json::array();
    for (const auto& x : m.measure.weights()) w.push_back(format_rational(x));
    j["weights"] = std::move(w);
    return j;
}

NamedMeasure load_measure(const json& doc) {
    if (kind_of(doc) != "measure") bad("expected a measure document");
    auto universe = need_names(need(doc, "universe", "measure"), "universe");
    if (universe.empty()) bad("universe: at least one element is required");
    auto index = index_names(universe, "universe");
    SetField field = load_atoms(index, universe.size(), need(doc, "atoms", "measure"), "atoms");
    const auto& w = need(doc, "weights", "measure");
    if (!w.is_array() || w.size() != field.atom_count()) bad("weights: need one weight per atom");
    std::vector<Rational> weights;
    for (std::size_t k = 0; k < w.size(); ++k) weights.push_back(need_rational(w[k], "weights"));
    try {
        return {universe, FAMeasure(field, std::move(weights))};
    } catch (const DomainError& e) {
        bad(std::string("weights: ") + e.what());
    }
}

Subset named_subset(const std::vector<std::string>& universe, const std::vector<std::string>& names) {
    Subset s(universe.size());
    for (const auto& name : names) {
        auto it = std::find(universe.begin(), universe.end(), name);
        if (it == universe.end()) bad("unknown element '" + name + "'");
        s.set(static_cast<std::size_t>(it - universe.begin()));
    }
    return s;
}

// --- maps and expressions ------------------------------------------------------------

std::vector<std::size_t> load_map(const json& doc, const TypeSpace& source, const TypeSpace& target) {
    if (kind_of(doc) != "map") bad("expected a map document");
    const auto& m = need(doc, "map", "map");
    if (!m.is_object()) bad("map: expected an object from source states to target states");
    std::vector<std::size_t> f(source.size());
    for (std::size_t k = 0; k < source.size(); ++k) {
        const auto& s = source.states()[k];
        if (!m.contains(s)) bad("map: no image for '" + s + "'");
        auto t = target.find_state(need_string(m[s], "map." + s));
        if (!t) bad("map." + s + ": unknown target state");
        f[k] = *t;
    }
    for (const auto& [s, v] : m.items())
        if (!source.find_state(s)) bad("map: unknown source state '" + s + "'");
    return f;
}

json emit_map(const std::vector<std::size_t>& f, const TypeSpace& source, const TypeSpace& target) {
    json j = header("map");
    json m = json::object();
    for (std::size_t k = 0; k < f.size(); ++k) m[source.states()[k]] = target.states()[f[k]];
    j["map"] = std::move(m);
    return j;
}

std::vector<lang::Expr> load_expr_list(const json& doc, const NatureSpace* nature) {
    if (kind_of(doc) != "expr_list") bad("expected an expr_list document");
    std::vector<lang::Expr> out;
    for (const auto& text : need_names(need(doc, "exprs", "expr_list"), "exprs")) out.push_back(lang::parse(text, nature));
    return out;
}

json state_names(const TypeSpace& space, const Subset& s) { return names_of(space.states(), s); }

} // namespace ftspace::doc
