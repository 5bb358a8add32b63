#include "tubenergy/spec_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tubenergy {

using nlohmann::json;

namespace {

double number_field(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        // decimal strings are accepted wherever bit-exactness matters
        const std::string s = j.get<std::string>();
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw SpecParseError(where + ": not a number: '" + s + "'");
        return v;
    }
    throw SpecParseError(where + ": expected a number or decimal string");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw SpecParseError(where + ": unknown field '" + it.key() + "'");
    }
}

std::vector<double> number_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw SpecParseError(where + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number_field(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

ClosedCurve parse_harmonics(const json& h) {
    reject_unknown(h, {"x", "y", "z"}, "curve.harmonics");
    ClosedCurve::Coeffs cosc{}, sinc{};
    const char* names[3] = {"x", "y", "z"};
    for (int c = 0; c < 3; ++c) {
        if (!h.contains(names[c]))
            throw SpecParseError(std::string("curve.harmonics: missing '") + names[c] + "'");
        const json& coord = h.at(names[c]);
        reject_unknown(coord, {"cos", "sin"}, std::string("curve.harmonics.") + names[c]);
        if (coord.contains("cos")) cosc[c] = number_array(coord.at("cos"), "cos");
        if (coord.contains("sin")) sinc[c] = number_array(coord.at("sin"), "sin");
    }
    return ClosedCurve(std::move(cosc), std::move(sinc));
}

} // namespace

ClosedCurve CurveSpec::make_curve() const {
    if (!preset.empty()) {
        if (preset == "circle" || preset == "torus-centerline")
            return ClosedCurve::circle(preset_radius);
        if (preset == "trefoil") return ClosedCurve::trefoil();
        throw SpecParseError("unknown curve preset '" + preset + "'");
    }
    if (!harmonics) throw SpecParseError("spec has neither preset nor harmonics");
    return *harmonics;
}

CurveSpec parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SpecParseError("spec root must be an object");
    reject_unknown(doc, {"curve", "tube_radius", "energy"}, "spec");

    CurveSpec out;
    if (!doc.contains("curve")) throw SpecParseError("spec: missing 'curve'");
    const json& c = doc.at("curve");
    reject_unknown(c, {"preset", "radius", "harmonics"}, "curve");
    if (c.contains("preset")) {
        out.preset = c.at("preset").get<std::string>();
        if (c.contains("radius")) out.preset_radius = number_field(c.at("radius"), "curve.radius");
        if (out.preset == "circle" || out.preset == "torus-centerline") {
            if (!(out.preset_radius > 0.0))
                throw SpecParseError("curve: circle preset needs a positive 'radius'");
        } else if (out.preset == "trefoil") {
            if (c.contains("radius")) throw SpecParseError("curve: trefoil takes no 'radius'");
        } else {
            throw SpecParseError("curve: unknown preset '" + out.preset + "'");
        }
        if (c.contains("harmonics"))
            throw SpecParseError("curve: give either a preset or harmonics, not both");
    } else if (c.contains("harmonics")) {
        out.harmonics = parse_harmonics(c.at("harmonics"));
    } else {
        throw SpecParseError("curve: need 'preset' or 'harmonics'");
    }

    if (!doc.contains("tube_radius")) throw SpecParseError("spec: missing 'tube_radius'");
    out.tube_radius = number_field(doc.at("tube_radius"), "tube_radius");
    if (!(out.tube_radius > 0.0)) throw SpecParseError("tube_radius must be positive");

    if (doc.contains("energy")) {
        const json& e = doc.at("energy");
        reject_unknown(e,
                       {"alpha", "grid", "eps_d_rel", "refinement_levels", "measure", "threads"},
                       "energy");
        if (e.contains("alpha")) out.energy.alpha = number_field(e.at("alpha"), "energy.alpha");
        if (e.contains("grid")) {
            const auto g = number_array(e.at("grid"), "energy.grid");
            if (g.size() != 2) throw SpecParseError("energy.grid: expected [n_s, n_theta]");
            out.energy.grid_s = static_cast<int>(g[0]);
            out.energy.grid_theta = static_cast<int>(g[1]);
        }
        if (e.contains("eps_d_rel"))
            out.energy.eps_d_rel = number_field(e.at("eps_d_rel"), "energy.eps_d_rel");
        if (e.contains("refinement_levels"))
            out.energy.refinement_levels =
                static_cast<int>(number_field(e.at("refinement_levels"), "refinement_levels"));
        if (e.contains("measure")) {
            const std::string m = e.at("measure").get<std::string>();
            if (m == "coordinate")
                out.energy.measure = SurfaceMeasure::Coordinate;
            else if (m == "physical")
                out.energy.measure = SurfaceMeasure::Physical;
            else
                throw SpecParseError("energy.measure: 'coordinate' or 'physical'");
        }
        if (e.contains("threads"))
            out.energy.threads = static_cast<int>(number_field(e.at("threads"), "threads"));
    }
    try {
        out.energy.validate();
        out.make_curve().validate();
    } catch (const std::invalid_argument& err) {
        throw SpecParseError(err.what());
    }
    return out;
}

CurveSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string serialize_spec(const CurveSpec& spec) {
    json doc;
    if (!spec.preset.empty()) {
        doc["curve"]["preset"] = spec.preset;
        if (spec.preset != "trefoil") doc["curve"]["radius"] = spec.preset_radius;
    } else if (spec.harmonics) {
        const char* names[3] = {"x", "y", "z"};
        for (int c = 0; c < 3; ++c) {
            doc["curve"]["harmonics"][names[c]]["cos"] = spec.harmonics->cos_coefficients()[c];
            doc["curve"]["harmonics"][names[c]]["sin"] = spec.harmonics->sin_coefficients()[c];
        }
    }
    doc["tube_radius"] = spec.tube_radius;
    json& e = doc["energy"];
    e["alpha"] = spec.energy.alpha;
    e["grid"] = {spec.energy.grid_s, spec.energy.grid_theta};
    e["eps_d_rel"] = spec.energy.eps_d_rel;
    e["refinement_levels"] = spec.energy.refinement_levels;
    e["measure"] = spec.energy.measure == SurfaceMeasure::Physical ? "physical" : "coordinate";
    e["threads"] = spec.energy.threads;
    return doc.dump(2);
}

std::string ResultTable::to_csv() const {
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << columns[c] << (c + 1 < columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << row[c] << (c + 1 < row.size() ? "," : "");
        os << "\n";
    }
    for (const auto& [k, v] : metadata) os << "# " << k << "=" << v << "\n";
    return os.str();
}

std::string ResultTable::to_json() const {
    json doc;
    doc["rows"] = json::array();
    for (const auto& row : rows) {
        json r;
        for (std::size_t c = 0; c < row.size() && c < columns.size(); ++c)
            r[columns[c]] = row[c];
        doc["rows"].push_back(std::move(r));
    }
    for (const auto& [k, v] : metadata) doc["metadata"][k] = v;
    return doc.dump(2) + "\n";
}

std::string ResultTable::render(const std::string& format) const {
    if (format == "csv") return to_csv();
    if (format == "json") return to_json();
    throw SpecParseError("unknown output format '" + format + "'");
}

} // namespace tubenergy
