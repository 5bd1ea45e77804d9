#pragma once

// JSON forms of fans, support maps and certificates. Rationals are written
// as "p/q" (or "p") strings; integers may also be given as JSON numbers.

#include "toricq/divisorial.hpp"
#include "toricq/quotient.hpp"
#include "toricq/reduction.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace toricq {

using Json = nlohmann::json;

/// Malformed file; carries a position for syntax errors, a JSON path otherwise.
class FormatError : public InputError {
  public:
    FormatError(const std::string& where, const std::string& what) : InputError(where + ": " + what) {}
};

struct MapSpec {
    std::size_t k = 0;
    std::vector<RatMatrix> matrices;  ///< one per listed cone
};

/// Contents of a fan file before the quasifan axioms are checked.
struct FanFile {
    std::size_t rank = 0;
    std::vector<RatVector> rays;
    std::vector<Cone> cones;  ///< as listed
    std::map<std::string, MapSpec> maps;
    std::optional<std::vector<IntVector>> subtorus;

    /// Throws InputError if the listed cones violate the axioms.
    Quasifan fan() const;
    /// Named map, or the only one if name is empty.
    SupportMap map(const std::string& name) const;
};

/// `source` names the input in diagnostics (e.g. the path).
Json parse_json(const std::string& text, const std::string& source);
FanFile fan_file_from_json(const Json& j);
FanFile read_fan_file(const std::string& path);

std::string rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& where);

Json to_json(std::span<const Integer> v);
Json to_json(const Cone& c);
/// Fan file form: all rays (canonical order), maximal cones by ray index.
Json to_json(const Quasifan& q);
/// Matrices listed per canonical maximal cone of the source.
Json to_json(const SupportMap& h);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);

Quasifan fan_from_json(const Json& j);
SupportMap support_map_from_json(const Json& j, const Quasifan& source);
IntMatrix int_matrix_from_json(const Json& j, const std::string& where);

Json certificate_to_json(const Quasifan& fan, const DivisorialityCertificate& cert);
/// Reads a divisoriality certificate; its fan must equal `fan`.
DivisorialityCertificate certificate_from_json(const Json& j, const Quasifan& fan);

Json to_json(const ReductionResult& r);
Json to_json(const ToricQuotient& q);
Json to_json(const QuotientDecision& d);

}  // namespace toricq
