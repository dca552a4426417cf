#pragma once

// JSON encodings of morphisms, classical structures, SC morphisms and the
// report pieces printed by the command-line tool.

#include <json.hpp>
#include <optional>
#include <string>

#include "cqm/channels.hpp"
#include "cqm/core.hpp"
#include "cqm/spider.hpp"
#include "cqm/structures.hpp"

namespace cqm::io {

using Json = nlohmann::json;

/// Rounds to 12 significant digits; negative zero becomes zero.
double round12(double v);

/// {"semiring", "dom", "cod", "entries"}. Complex entries are [re, im]
/// (a bare number is read as real); boolean entries are 0/1 or true/false.
/// `fallback` is used when "semiring" is absent. Throws InvalidInput.
Mor mor_from_json(const Json& j, SemiringKind fallback = SemiringKind::complex);
Json mor_to_json(const Mor& f);

/// {"object", "delta", "top"}, a group presentation {"blocks": [...]}, or
/// {"standard": [dims]}. Throws InvalidInput.
ClassicalStructure structure_from_json(const Json& j, SemiringKind fallback = SemiringKind::complex);
Json structure_to_json(const ClassicalStructure& cs);

/// {"dom": {"x": <structure>, "a": [dims]}, "cod": {...}, "phi": <Mor>, "g": <Mor>}.
SCMor sc_from_json(const Json& j, double tol);
Json sc_to_json(const SCMor& m);

/// {name: {"passed", "deviation"}}.
Json report_to_json(const AxiomReport& r);

/// {"inputs", "outputs", "components": [{"in", "out"}], "wiring": [{"inputs", "outputs"}]}.
Json normal_form_to_json(const NormalForm& nf);

SemiringKind semiring_from_string(const std::string& s);

/// Reads and parses a file. Throws InvalidInput on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace cqm::io
