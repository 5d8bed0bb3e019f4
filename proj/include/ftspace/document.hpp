#pragma once

// The versioned JSON document format shared by the CLI and the Python module.
//
// Every document carries "schema": "ftspace", "version": 1 and a "kind". Rationals
// are strings ("1/2", "1"), sets are arrays of element names. Emitted documents
// keep key order stable, so equal inputs give byte-identical text.

#include "ftspace/lang.hpp"
#include "ftspace/typespace.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ftspace::doc {

using json = nlohmann::ordered_json;
using measure::FAMeasure;
using measure::SetField;
using types::NatureSpace;
using types::TypeSpace;

inline constexpr int kVersion = 1;

/// {"schema", "version", "kind"}, to be filled by the caller.
json header(const std::string& kind);

/// Checks the header and returns the kind. Throws SchemaError.
std::string kind_of(const json& doc);

/// Reads and parses a file. Throws SchemaError for unreadable or malformed text.
json read_file(const std::string& path);
json parse_text(const std::string& text);
/// Two-space indented text with a trailing newline.
std::string dump(const json& doc);

// --- type spaces ------------------------------------------------------------------

/// kind "type_space". Measures are listed once under generated names m0, m1, ...
/// and referenced from "types"; the field is omitted when it is the powerset.
json emit_space(const TypeSpace& space);
/// Throws SchemaError for structural problems (unknown names, atoms outside the
/// field, malformed rationals). Probability defects are kept for validate().
TypeSpace load_space(const json& doc);

// --- measures and fields on a named universe -----------------------------------------

struct NamedField {
    std::vector<std::string> universe;
    SetField field;
};

struct NamedMeasure {
    std::vector<std::string> universe;
    FAMeasure measure;
};

/// kind "field": {"universe": [...], "atoms": [[...], ...]}
json emit_field(const NamedField& f);
NamedField load_field(const json& doc);

/// kind "measure": {"universe", "atoms", "weights": ["p/q", ...]} with one weight
/// per atom. Throws SchemaError unless the weights form a probability measure.
json emit_measure(const NamedMeasure& m);
NamedMeasure load_measure(const json& doc);

/// A set of universe elements given by name. Throws SchemaError for unknown names.
Subset named_subset(const std::vector<std::string>& universe, const std::vector<std::string>& names);

// --- maps and expression lists --------------------------------------------------------

/// kind "map": {"map": {"source state": "target state", ...}} covering every source
/// state. Throws SchemaError otherwise.
std::vector<std::size_t> load_map(const json& doc, const TypeSpace& source, const TypeSpace& target);
json emit_map(const std::vector<std::size_t>& f, const TypeSpace& source, const TypeSpace& target);

/// kind "expr_list": {"exprs": ["nat(h)", ...]}
std::vector<lang::Expr> load_expr_list(const json& doc, const NatureSpace* nature = nullptr);

/// Sorted state names of a subset.
json state_names(const TypeSpace& space, const Subset& s);

} // namespace ftspace::doc
