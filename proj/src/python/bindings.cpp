// Python module ftspace._core. Documents cross the boundary as JSON text; the
// package wrapper turns them into dicts.

#include "ftspace/document.hpp"
#include "ftspace/error.hpp"
#include "ftspace/soberdrunk.hpp"
#include "ftspace/universal.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ftspace;
using doc::json;

namespace {

std::size_t state_index(const types::TypeSpace& s, const std::string& name) {
    const auto& st = s.states();
    auto it = std::find(st.begin(), st.end(), name);
    if (it == st.end()) throw DomainError("unknown state '" + name + "'");
    return static_cast<std::size_t>(it - st.begin());
}

std::optional<std::string> player_of(const types::TypeSpace& s, std::optional<std::size_t> i) {
    if (!i) return std::nullopt;
    return s.players()[*i];
}

std::string validate_json(const types::TypeSpace& s) {
    auto rep = types::validate(s);
    json j;
    j["valid"] = rep.valid();
    j["violations"] = json::array();
    for (const auto& v : rep.violations) {
        json e;
        e["kind"] = types::to_string(v.kind);
        e["player"] = v.player ? json(s.players()[*v.player]) : json(nullptr);
        e["state"] = s.states()[v.state];
        e["detail"] = v.detail;
        j["violations"].push_back(e);
    }
    return j.dump();
}

std::vector<std::string> names(const types::TypeSpace& s, const Subset& e) {
    std::vector<std::string> out;
    for (auto m : elements(e)) out.push_back(s.states()[m]);
    return out;
}

std::map<std::string, std::string> named_map(const std::vector<std::size_t>& f, const types::TypeSpace& src,
                                             const types::TypeSpace& dst) {
    std::map<std::string, std::string> out;
    for (std::size_t m = 0; m < f.size(); ++m) out[src.states()[m]] = dst.states()[f[m]];
    return out;
}

std::vector<std::size_t> index_map(const std::map<std::string, std::string>& f, const types::TypeSpace& src,
                                   const types::TypeSpace& dst) {
    std::vector<std::size_t> out(src.size());
    if (f.size() != src.size()) throw DomainError("the map must cover every source state exactly once");
    for (std::size_t m = 0; m < src.size(); ++m) {
        auto it = f.find(src.states()[m]);
        if (it == f.end()) throw DomainError("the map misses state '" + src.states()[m] + "'");
        out[m] = state_index(dst, it->second);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite type spaces, belief expressions and sober-drunk constructions";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);

    py::class_<types::TypeSpace>(m, "TypeSpace")
        .def_property_readonly("states", &types::TypeSpace::states)
        .def_property_readonly("players", &types::TypeSpace::players)
        .def("__len__", &types::TypeSpace::size)
        .def("to_json", [](const types::TypeSpace& s) { return doc::dump(doc::emit_space(s)); })
        .def("__repr__", [](const types::TypeSpace& s) {
            return "<TypeSpace with " + std::to_string(s.size()) + " states>";
        });

    m.def("load_space", [](const std::string& text) { return doc::load_space(doc::parse_text(text)); },
          py::arg("text"), "Type space from a type_space document.");
    m.def("validate_json", &validate_json, py::arg("space"));

    m.def("canonical", [](const std::string& e) { return lang::to_string(lang::parse(e)); }, py::arg("expr"));
    m.def("depth", [](const std::string& e) { return lang::depth(lang::parse(e)); }, py::arg("expr"));
    m.def(
        "eval",
        [](const types::TypeSpace& s, const std::string& e) {
            return names(s, lang::eval(s, lang::parse(e, &s.nature())));
        },
        py::arg("space"), py::arg("expr"), "States where the expression holds.");

    m.def(
        "fingerprint",
        [](const types::TypeSpace& s, const std::string& state, std::size_t d) {
            return universal::desc_fingerprint(s, state_index(s, state), d);
        },
        py::arg("space"), py::arg("state"), py::arg("depth"));
    m.def(
        "quotient",
        [](const types::TypeSpace& s) {
            auto q = universal::quotient(s);
            auto f = named_map(q.q, s, q.space);
            return py::make_tuple(std::move(q.space), f, q.tower.stable_depth);
        },
        py::arg("space"), "(quotient space, state map, stable depth).");

    m.def(
        "is_type_morphism",
        [](const types::TypeSpace& src, const types::TypeSpace& dst, const std::map<std::string, std::string>& f) {
            auto rep = types::is_type_morphism(src, dst, index_map(f, src, dst));
            std::optional<std::string> witness;
            if (rep.witness) witness = src.states()[*rep.witness];
            return py::make_tuple(rep.ok, rep.failure, witness);
        },
        py::arg("source"), py::arg("target"), py::arg("map"));
    m.def(
        "enumerate_morphisms",
        [](const types::TypeSpace& src, const types::TypeSpace& dst, std::size_t max_maps) {
            std::vector<std::map<std::string, std::string>> out;
            for (const auto& f : types::enumerate_morphisms(src, dst, max_maps)) out.push_back(named_map(f, src, dst));
            return out;
        },
        py::arg("source"), py::arg("target"), py::arg("max_maps") = 1'000'000);

    m.def(
        "los_marczewski_extend",
        [](const std::string& measure_doc, const std::vector<std::string>& set, const std::string& p) {
            auto mu = doc::load_measure(doc::parse_text(measure_doc));
            auto e = doc::named_subset(mu.universe, set);
            doc::NamedMeasure out{mu.universe, measure::los_marczewski_extend(mu.measure, e, parse_rational(p))};
            return doc::dump(doc::emit_measure(out));
        },
        py::arg("measure"), py::arg("set"), py::arg("p"));
    m.def(
        "horn_tarski_extend",
        [](const std::string& measure_doc, const std::string& field_doc) {
            auto mu = doc::load_measure(doc::parse_text(measure_doc));
            auto f = doc::load_field(doc::parse_text(field_doc));
            if (f.universe != mu.universe) throw DomainError("target field is on a different universe");
            doc::NamedMeasure out{mu.universe, measure::horn_tarski_extend(mu.measure, f.field)};
            return doc::dump(doc::emit_measure(out));
        },
        py::arg("measure"), py::arg("field"));

    m.def(
        "soberdrunk_space", [](std::size_t n) { return sober::soberdrunk_space(n); }, py::arg("n"));
    m.def(
        "separation_demo",
        [](std::size_t n, std::size_t alpha, const std::string& player) {
            if (player != "a" && player != "b") throw DomainError("player must be a or b");
            auto r = sober::separation_demo(n, alpha, player == "a" ? sober::kPlayerA : sober::kPlayerB);
            py::dict d;
            d["u"] = sober::state_name(r.u);
            d["w"] = sober::state_name(r.w);
            d["psi"] = lang::to_string(r.psi);
            d["psi_depth"] = r.psi_depth;
            d["ok"] = r.ok();
            return d;
        },
        py::arg("n"), py::arg("alpha"), py::arg("player") = "a");
}
