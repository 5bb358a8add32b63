#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tubenergy/curve.hpp"
#include "tubenergy/energy.hpp"

namespace tubenergy {

// A run configuration: curve (preset or explicit harmonics), tube radius and
// energy parameters. Unknown document fields are rejected on load.
struct CurveSpec {
    // preset name ("circle", "trefoil") or empty for explicit harmonics
    std::string preset;
    double preset_radius = 0.0; // circle only
    std::optional<ClosedCurve> harmonics;
    double tube_radius = 0.0;
    EnergyParams energy;

    ClosedCurve make_curve() const;
};

CurveSpec parse_spec(const std::string& json_text);
CurveSpec load_spec(const std::string& path);
std::string serialize_spec(const CurveSpec& spec);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

// A small result table: header row, preformatted cells, and a trailing
// metadata block emitted as comment lines in CSV or an object in JSON.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    std::string to_csv() const;
    std::string to_json() const;
    std::string render(const std::string& format) const; // "csv" | "json"
};

} // namespace tubenergy
