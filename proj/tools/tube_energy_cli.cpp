#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tubenergy/contact.hpp"
#include "tubenergy/energy.hpp"
#include "tubenergy/spec_io.hpp"

namespace {

using namespace tubenergy;

constexpr int kExitClear = 0;
constexpr int kExitContact = 2;      // self-contact / divergent
constexpr int kExitInadmissible = 3; // r * kappa_max >= 1
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

void emit(const ResultTable& table, const std::string& out_path, const std::string& format) {
    const std::string text = table.render(format);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw SpecParseError("cannot open output file '" + out_path + "'");
        out << text;
    }
}

void spec_metadata(ResultTable& t, const CurveSpec& spec) {
    t.metadata.push_back({"curve", spec.preset.empty() ? "harmonics" : spec.preset});
    t.metadata.push_back({"tube_radius", format_double(spec.tube_radius)});
    t.metadata.push_back({"alpha", format_double(spec.energy.alpha)});
    t.metadata.push_back({"grid", std::to_string(spec.energy.grid_s) + "x" +
                                      std::to_string(spec.energy.grid_theta)});
    t.metadata.push_back({"eps_d_rel", format_double(spec.energy.eps_d_rel)});
    t.metadata.push_back({"measure", spec.energy.measure == SurfaceMeasure::Physical
                                         ? "physical"
                                         : "coordinate"});
    t.metadata.push_back({"version", "tube-energy 0.1.0"});
}

int cmd_energy(const CurveSpec& spec, const std::string& out, const std::string& fmt) {
    const Tube tube(spec.make_curve(), spec.tube_radius);
    ResultTable t;
    t.columns = {"value", "error_estimate", "locally_inadmissible", "near_contact", "min_chord"};
    spec_metadata(t, spec);
    try {
        const EnergyResult res = energy(tube, spec.energy);
        t.rows.push_back({format_double(res.value), format_double(res.error_estimate),
                          res.locally_inadmissible ? "1" : "0", res.near_contact ? "1" : "0",
                          format_double(res.min_chord)});
        emit(t, out, fmt);
        if (res.locally_inadmissible) return kExitInadmissible;
        return kExitClear;
    } catch (const SelfContactSingular& e) {
        t.metadata.push_back({"divergent_pair", "(" + format_double(e.u) + "," +
                                                    format_double(e.theta) + ")-(" +
                                                    format_double(e.v) + "," +
                                                    format_double(e.phi) + ")"});
        t.rows.push_back({"divergent", "inf", "0", "1", "0"});
        emit(t, out, fmt);
        return kExitContact;
    }
}

int cmd_sweep_r(const CurveSpec& spec, const std::vector<double>& radii, const std::string& out,
                const std::string& fmt) {
    if (radii.empty()) throw CLI::ValidationError("sweep-r", "empty radius list");
    const ClosedCurve curve = spec.make_curve();
    const double knot_energy = ohara_energy(curve, spec.energy.alpha, 2048);
    const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    ResultTable t;
    t.columns = {"r", "F", "F_over_4pi2", "abs_diff_vs_knot_energy"};
    spec_metadata(t, spec);
    t.metadata.push_back({"knot_energy", format_double(knot_energy)});
    int code = kExitClear;
    for (double r : radii) {
        const Tube tube(curve, r);
        try {
            const EnergyResult res = energy(tube, spec.energy);
            const double normd = res.value / four_pi_sq;
            t.rows.push_back({format_double(r), format_double(res.value), format_double(normd),
                              format_double(std::abs(normd - knot_energy))});
            if (res.locally_inadmissible && code == kExitClear) code = kExitInadmissible;
        } catch (const SelfContactSingular&) {
            t.rows.push_back({format_double(r), "divergent", "", ""});
            code = kExitContact;
        }
    }
    emit(t, out, fmt);
    return code;
}

int cmd_sweep_aspect(const CurveSpec& spec, const std::vector<double>& aspects,
                     const std::string& out, const std::string& fmt) {
    if (aspects.empty()) throw CLI::ValidationError("sweep-aspect", "empty aspect list");
    if (spec.preset != "circle" && spec.preset != "torus-centerline")
        throw CLI::ValidationError("sweep-aspect", "requires a circle-preset spec");
    ResultTable t;
    t.columns = {"aspect", "R", "F", "error_estimate", "locally_inadmissible"};
    spec_metadata(t, spec);
    int code = kExitClear;
    for (double a : aspects) {
        const double R = a * spec.tube_radius;
        const Tube tube(ClosedCurve::circle(R), spec.tube_radius);
        try {
            const EnergyResult res = energy(tube, spec.energy);
            t.rows.push_back({format_double(a), format_double(R), format_double(res.value),
                              format_double(res.error_estimate),
                              res.locally_inadmissible ? "1" : "0"});
            if (res.locally_inadmissible && code == kExitClear) code = kExitInadmissible;
        } catch (const SelfContactSingular&) {
            t.rows.push_back({format_double(a), format_double(R), "divergent", "", ""});
            code = kExitContact;
        }
    }
    emit(t, out, fmt);
    return code;
}

int cmd_exponent_study(const std::string& geometry, std::vector<double> alphas,
                       std::vector<double> deltas, double extent, const std::string& out,
                       const std::string& fmt) {
    if (alphas.empty() || deltas.size() < 3)
        throw CLI::ValidationError("exponent-study", "need alphas and >= 3 deltas");
    for (double a : alphas)
        if (!(a > 0.0 && a < 3.0))
            throw CLI::ValidationError("exponent-study", "alpha must lie in (0, 3)");
    std::sort(deltas.rbegin(), deltas.rend()); // largest cutoff first
    const ContactModel model =
        geometry == "point" ? ContactModel::Point : ContactModel::Line;
    const auto J = exponent_model_integral(model, alphas, deltas, extent);
    ResultTable t;
    t.columns = {"alpha", "delta", "J", "dJ", "verdict"};
    t.metadata.push_back({"geometry", geometry});
    t.metadata.push_back({"extent", format_double(extent)});
    t.metadata.push_back({"version", "tube-energy 0.1.0"});
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        const bool conv = cauchy_converges(J[a]);
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            const std::string dj = k == 0 ? "" : format_double(J[a][k] - J[a][k - 1]);
            const std::string verdict =
                k + 1 == deltas.size() ? (conv ? "converges" : "diverges") : "";
            t.rows.push_back({format_double(alphas[a]), format_double(deltas[k]),
                              format_double(J[a][k]), dj, verdict});
        }
    }
    emit(t, out, fmt);
    return kExitClear;
}

int cmd_report(const CurveSpec& spec, const std::string& out, const std::string& fmt) {
    const Tube tube(spec.make_curve(), spec.tube_radius);
    const ContactReport rep = admissibility_report(tube);
    ResultTable t;
    t.columns = {"classification", "r_kappa_max",   "min_chord",     "pseudo_sq_at_witness",
                 "witness",        "min_jacobian",  "min_centerline_dist"};
    spec_metadata(t, spec);
    t.metadata.push_back({"tol_contact", format_double(rep.tol_contact)});
    t.metadata.push_back({"tol_far", format_double(rep.tol_far)});
    const std::string witness = "(" + format_double(rep.separation.witness_x.u) + "," +
                                format_double(rep.separation.witness_x.theta) + ")-(" +
                                format_double(rep.separation.witness_y.u) + "," +
                                format_double(rep.separation.witness_y.theta) + ")";
    t.rows.push_back({to_string(rep.classification), format_double(rep.r_kappa_max),
                      format_double(rep.separation.min_chord),
                      format_double(rep.separation.pseudo_sq), witness,
                      format_double(rep.min_jacobian), format_double(rep.min_centerline_dist)});
    emit(t, out, fmt);
    switch (rep.classification) {
        case ContactClass::Clear: return kExitClear;
        case ContactClass::SelfContact:
        case ContactClass::InterpenetrationSuspected: return kExitContact;
        case ContactClass::LocallyInadmissible: return kExitInadmissible;
    }
    return kExitClear;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface energy of tubular neighbourhoods of closed space curves"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string spec_path, out_path, format = "csv";
    app.add_option("--spec", spec_path, "JSON run configuration");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    int grid_s = 0, grid_theta = 0;
    app.add_option("--grid", [&](const CLI::results_t& vals) {
           return std::sscanf(vals[0].c_str(), "%d,%d", &grid_s, &grid_theta) == 2;
       },
       "override grid as N_S,N_THETA");
    double alpha_override = 0.0;
    app.add_option("--alpha", alpha_override, "override exponent");

    auto* c_energy = app.add_subcommand("energy", "surface energy of one configuration");
    auto* c_sweep_r = app.add_subcommand("sweep-r", "energy across tube radii");
    std::vector<double> radii;
    c_sweep_r->add_option("--radii", radii, "tube radii")->delimiter(',');
    auto* c_aspect = app.add_subcommand("sweep-aspect", "energy across R/r aspect ratios");
    std::vector<double> aspects;
    c_aspect->add_option("--aspects", aspects, "R/r values")->delimiter(',');
    auto* c_exp = app.add_subcommand("exponent-study", "local contact model integrals");
    std::string geometry = "point";
    std::vector<double> alphas, deltas{1e-2, 5e-3, 2.5e-3};
    double extent = 0.5;
    c_exp->add_option("--geometry", geometry, "point|line")
        ->check(CLI::IsMember({"point", "line"}));
    c_exp->add_option("--alphas", alphas, "exponents")->delimiter(',')->required();
    c_exp->add_option("--deltas", deltas, "cutoff radii (>= 3)")->delimiter(',');
    c_exp->add_option("--extent", extent, "model domain half-width");
    auto* c_report = app.add_subcommand("report", "self-contact / admissibility report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const bool needs_spec = !c_exp->parsed();
        CurveSpec spec;
        if (needs_spec) {
            if (spec_path.empty()) {
                std::cerr << "error: --spec FILE is required for this subcommand\n";
                return kExitUsage;
            }
            spec = load_spec(spec_path);
            if (grid_s > 0) {
                spec.energy.grid_s = grid_s;
                spec.energy.grid_theta = grid_theta;
            }
            if (alpha_override > 0.0) spec.energy.alpha = alpha_override;
            spec.energy.validate();
        }
        if (c_energy->parsed()) return cmd_energy(spec, out_path, format);
        if (c_sweep_r->parsed()) return cmd_sweep_r(spec, radii, out_path, format);
        if (c_aspect->parsed()) return cmd_sweep_aspect(spec, aspects, out_path, format);
        if (c_exp->parsed())
            return cmd_exponent_study(geometry, alphas, deltas, extent, out_path, format);
        if (c_report->parsed()) return cmd_report(spec, out_path, format);
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const tubenergy::SpecParseError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
