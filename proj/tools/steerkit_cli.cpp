#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steerkit/errors.hpp"
#include "steerkit/glsi.hpp"
#include "steerkit/io.hpp"
#include "steerkit/pure_state.hpp"
#include "steerkit/scans.hpp"
#include "steerkit/shotsim.hpp"
#include "steerkit/states.hpp"
#include "steerkit/steering.hpp"
#include "steerkit/svg.hpp"
#include "steerkit/version.hpp"

using namespace steerkit;

namespace {

constexpr double kPi = 3.14159265358979323846;

void emit_text(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path);
    if (!f) {
        throw PreconditionError("output_path", "cannot write " + out_path, 0.0);
    }
    f << content;
}

void emit_json(const json& doc, const std::string& out_path) {
    emit_text(doc.dump(2) + "\n", out_path);
}

json with_metadata(const std::string& command, const json& parameters,
                   const json& payload) {
    json doc;
    doc["metadata"] = make_metadata(command, parameters);
    doc.update(payload);
    return doc;
}

// SVG documents carry their metadata as a leading XML comment.
std::string svg_metadata_comment(const std::string& command,
                                 const json& parameters) {
    std::string line = std::string("<!-- tool=") + kToolName + " version=" +
                       kVersion + " command=" + command;
    for (auto it = parameters.begin(); it != parameters.end(); ++it) {
        std::string value = it.value().is_string()
                                ? it.value().get<std::string>()
                                : it.value().dump();
        line += " " + it.key() + "=" + value;
    }
    line += " -->\n";
    return line;
}

// Shared state-selection flags for commands that act on a density matrix.
struct StateArgs {
    std::string family = "pure";
    std::string state_file;
    std::string alpha_text;
    std::string phase_text = "0";
    double visibility = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family,
                        "State family: pure, werner, asymmetric or raw")
            ->check(CLI::IsMember({"pure", "werner", "asymmetric", "raw"}));
        cmd->add_option("--state-file", state_file,
                        "JSON density matrix, required for --family raw");
        cmd->add_option("--alpha", alpha_text,
                        "Schmidt angle, radians unless suffixed deg");
        cmd->add_option("--state-phase", phase_text,
                        "Relative phase of the pure reference");
        cmd->add_option("--visibility", visibility,
                        "Mixing weight V in [0, 1]");
    }

    ComplexMatrix resolve(json& params) const {
        Family fam = family_from_name(family);
        params["family"] = family;
        if (fam == Family::raw) {
            if (state_file.empty()) throw CLI::RequiredError("--state-file");
            params["state_file"] = state_file;
            return load_state_file(state_file);
        }
        if (alpha_text.empty()) throw CLI::RequiredError("--alpha");
        StateFamilySpec spec;
        spec.family = fam;
        spec.alpha = parse_angle(alpha_text);
        spec.phase = parse_angle(phase_text);
        spec.visibility = visibility;
        params["alpha"] = spec.alpha;
        params["phase"] = spec.phase;
        if (fam != Family::pure) params["visibility"] = visibility;
        return make_state(spec);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Two-qubit steering toolkit: paradox sums, linear steering "
        "inequalities, detection scans and finite-shot simulation"};
    app.set_version_flag("--version",
                         std::string(kToolName) + " " + kVersion);
    app.require_subcommand(1);

    // paradox: exact two-outcome paradox sum for a pure reference state.
    auto* paradox_cmd = app.add_subcommand(
        "paradox", "Evaluate the exact steering-paradox sum");
    std::string paradox_alpha;
    std::string paradox_phi = "0";
    std::string paradox_settings = "z,x";
    std::string paradox_out;
    paradox_cmd
        ->add_option("--alpha", paradox_alpha,
                     "Schmidt angle, radians unless suffixed deg")
        ->required();
    paradox_cmd->add_option("--phi", paradox_phi,
                            "Relative phase of the state");
    paradox_cmd->add_option("--settings", paradox_settings,
                            "Comma-separated Alice directions");
    paradox_cmd->add_option("--out", paradox_out, "Output file");
    paradox_cmd->callback([&] {
        double alpha = parse_angle(paradox_alpha);
        double phi = parse_angle(paradox_phi);
        auto dirs = parse_direction_list(paradox_settings);
        ParadoxReport report = paradox_value(psi_state(alpha, phi), dirs);
        json params{{"alpha", alpha},
                    {"phi", phi},
                    {"settings", paradox_settings}};
        emit_json(with_metadata("paradox", params, paradox_report_json(report)),
                  paradox_out);
    });

    // bound: enumerated classical bound of one inequality instance.
    auto* bound_cmd = app.add_subcommand(
        "bound", "Enumerate the deterministic classical bound");
    std::string bound_theta;
    std::string bound_phi = "0";
    std::string bound_dirs = "x,y,z";
    std::string bound_out;
    bound_cmd
        ->add_option("--theta", bound_theta,
                     "Bob projector angle, radians unless suffixed deg")
        ->required();
    bound_cmd->add_option("--phi", bound_phi, "Bob projector phase");
    bound_cmd->add_option("--settings,--directions", bound_dirs,
                          "Comma-separated Alice directions");
    bound_cmd->add_option("--out", bound_out, "Output file");
    bound_cmd->callback([&] {
        double theta = parse_angle(bound_theta);
        double phi = parse_angle(bound_phi);
        auto dirs = parse_direction_list(bound_dirs);
        GlsiInstance inst = GlsiInstance::build(theta, phi, dirs);
        auto [c_lhs, strategies] = classical_bound(inst);
        json payload;
        payload["c_lhs"] = c_lhs;
        payload["c_lhs_prime"] =
            lsi_from_glsi_bound(static_cast<int>(dirs.size()), c_lhs);
        bool canonical =
            dirs.size() == 3 &&
            dirs[0].duplicate_of(MeasurementDirection::x_axis()) &&
            dirs[1].duplicate_of(MeasurementDirection::y_axis()) &&
            dirs[2].duplicate_of(MeasurementDirection::z_axis());
        if (canonical) {
            auto [c_plus, c_minus] = c_pm(theta);
            payload["c_plus"] = c_plus;
            payload["c_minus"] = c_minus;
        }
        json strats = json::array();
        for (const LhsStrategy& s : strategies) {
            strats.push_back(json{{"assignment", s.assignment},
                                  {"max_eigenvalue", s.max_eigenvalue}});
        }
        payload["maximizing_strategies"] = strats;
        json params{{"theta", theta},
                    {"phi", phi},
                    {"settings", bound_dirs}};
        emit_json(with_metadata("bound", params, payload), bound_out);
    });

    // eval: inequality value of one state at fixed angles.
    auto* eval_cmd = app.add_subcommand(
        "eval", "Evaluate the three-setting inequality for a state");
    StateArgs eval_state;
    std::string eval_theta;
    std::string eval_phi = "0";
    std::string eval_out;
    eval_state.attach(eval_cmd);
    eval_cmd
        ->add_option("--theta", eval_theta,
                     "Bob projector angle, radians unless suffixed deg")
        ->required();
    eval_cmd->add_option("--phi", eval_phi, "Bob projector phase");
    eval_cmd->add_option("--out", eval_out, "Output file");
    eval_cmd->callback([&] {
        json params;
        ComplexMatrix rho = eval_state.resolve(params);
        double theta = parse_angle(eval_theta);
        double phi = parse_angle(eval_phi);
        params["theta"] = theta;
        params["phi"] = phi;
        InequalityReport report = sprime3_value(rho, theta, phi);
        emit_json(with_metadata("eval", params, inequality_report_json(report)),
                  eval_out);
    });

    // optimize: best violation over theta (and optionally phi and signs).
    auto* opt_cmd = app.add_subcommand(
        "optimize", "Search for the maximal inequality violation");
    StateArgs opt_state;
    std::string opt_phi = "0";
    int opt_phi_steps = 0;
    bool opt_no_flips = false;
    std::string opt_out;
    opt_state.attach(opt_cmd);
    opt_cmd->add_option("--phi", opt_phi, "Fixed Bob projector phase");
    opt_cmd->add_option("--phi-steps", opt_phi_steps,
                        "Scan this many phases over [0, 2pi) instead");
    opt_cmd->add_flag("--no-sign-flips", opt_no_flips,
                      "Disable the Alice outcome-relabeling search");
    opt_cmd->add_option("--out", opt_out, "Output file");
    opt_cmd->callback([&] {
        json params;
        ComplexMatrix rho = opt_state.resolve(params);
        std::vector<double> phi_grid;
        if (opt_phi_steps > 0) {
            for (int i = 0; i < opt_phi_steps; ++i) {
                phi_grid.push_back(2.0 * kPi * i / opt_phi_steps);
            }
            params["phi_steps"] = opt_phi_steps;
        } else {
            phi_grid.push_back(parse_angle(opt_phi));
            params["phi"] = phi_grid.front();
        }
        params["sign_flips"] = !opt_no_flips;
        Detection d = detect_violation(rho, phi_grid, !opt_no_flips);
        json payload = detection_json(d);
        payload["report"] = inequality_report_json(
            sprime3_value(rho, d.theta_star, d.phi_star, d.signs));
        emit_json(with_metadata("optimize", params, payload), opt_out);
    });

    // scan: detection region over an (alpha, visibility) grid.
    auto* scan_cmd = app.add_subcommand(
        "scan", "Map the detection region of a mixed family");
    std::string scan_family;
    int scan_alpha_steps = 50;
    int scan_v_steps = 50;
    unsigned scan_threads = 0;
    std::string scan_format = "csv";
    std::string scan_out;
    scan_cmd->add_option("--family", scan_family, "werner or asymmetric")
        ->required()
        ->check(CLI::IsMember({"werner", "asymmetric"}));
    scan_cmd->add_option("--alpha-steps", scan_alpha_steps,
                         "Grid points along alpha");
    scan_cmd->add_option("--v-steps", scan_v_steps,
                         "Grid points along visibility");
    scan_cmd->add_option("--threads", scan_threads,
                         "Worker threads, 0 = hardware concurrency");
    scan_cmd->add_option("--format", scan_format, "csv, json or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    scan_cmd->add_option("--out", scan_out, "Output file");
    scan_cmd->callback([&] {
        RegionTable table = region_scan(family_from_name(scan_family),
                                        scan_alpha_steps, scan_v_steps,
                                        scan_threads);
        json params{{"family", scan_family},
                    {"alpha_steps", scan_alpha_steps},
                    {"v_steps", scan_v_steps},
                    {"threads", scan_threads},
                    {"format", scan_format}};
        if (scan_format == "csv") {
            emit_text(region_csv(table, csv_metadata_lines("scan", params)),
                      scan_out);
        } else if (scan_format == "json") {
            emit_json(with_metadata("scan", params, region_json(table)),
                      scan_out);
        } else {
            emit_text(svg_metadata_comment("scan", params) + region_svg(table),
                      scan_out);
        }
    });

    // simulate: finite-shot estimates with seeded sampling.
    auto* sim_cmd = app.add_subcommand(
        "simulate", "Finite-shot simulation of the paradox or the inequality");
    StateArgs sim_state;
    std::string sim_kind = "paradox";
    std::string sim_theta;
    std::string sim_phi = "0";
    std::uint64_t sim_shots = 10000;
    std::uint64_t sim_seed = 12345;
    std::string sim_out;
    sim_cmd->add_option("--kind", sim_kind, "paradox or sprime3")
        ->check(CLI::IsMember({"paradox", "sprime3"}));
    sim_state.attach(sim_cmd);
    sim_cmd->add_option("--theta", sim_theta,
                        "Bob projector angle, sprime3 only");
    sim_cmd->add_option("--phi", sim_phi, "Bob projector phase, sprime3 only");
    sim_cmd->add_option("--shots", sim_shots, "Shots per setting");
    sim_cmd->add_option("--seed", sim_seed, "Master seed");
    sim_cmd->add_option("--out", sim_out, "Output file");
    sim_cmd->callback([&] {
        json params{{"kind", sim_kind}};
        json payload;
        if (sim_kind == "paradox") {
            if (sim_state.alpha_text.empty()) {
                throw CLI::RequiredError("--alpha");
            }
            double alpha = parse_angle(sim_state.alpha_text);
            params["alpha"] = alpha;
            params["shots"] = sim_shots;
            params["seed"] = sim_seed;
            payload = estimate_json(simulate_paradox(alpha, sim_shots,
                                                     sim_seed));
        } else {
            ComplexMatrix rho = sim_state.resolve(params);
            if (sim_theta.empty()) throw CLI::RequiredError("--theta");
            double theta = parse_angle(sim_theta);
            double phi = parse_angle(sim_phi);
            params["theta"] = theta;
            params["phi"] = phi;
            params["shots"] = sim_shots;
            params["seed"] = sim_seed;
            payload = estimate_json(
                simulate_sprime3(rho, theta, phi, sim_shots, sim_seed));
        }
        emit_json(with_metadata("simulate", params, payload), sim_out);
    });

    // prep: wave-plate preparation settings realizing a target state.
    auto* prep_cmd = app.add_subcommand(
        "prep", "Optical preparation settings for a pure state");
    std::string prep_alpha;
    std::string prep_beta;
    std::string prep_out;
    prep_cmd->add_option("--alpha", prep_alpha,
                         "Target Schmidt angle in (0, pi/4]");
    prep_cmd->add_option("--beta", prep_beta, "Preparation angle directly");
    prep_cmd->add_option("--out", prep_out, "Output file");
    prep_cmd->callback([&] {
        if (prep_alpha.empty() == prep_beta.empty()) {
            throw CLI::RequiredError("exactly one of --alpha or --beta");
        }
        json params;
        double beta;
        if (!prep_alpha.empty()) {
            double alpha = parse_angle(prep_alpha);
            params["alpha"] = alpha;
            beta = optics_beta_for_alpha(alpha);
        } else {
            beta = parse_angle(prep_beta);
            params["beta"] = beta;
        }
        OpticsResult r = optics_prep(beta);
        double beta_deg = r.beta * 180.0 / kPi;
        json payload;
        payload["alpha"] = r.alpha;
        payload["beta"] = r.beta;
        payload["beta_deg"] = beta_deg;
        payload["hwp1_deg"] = 0.0;
        payload["hwp2_deg"] = beta_deg / 2.0;
        payload["hwp3_deg"] = 45.0;
        json amps = json::array();
        for (const cplx& a : r.state.amplitudes()) {
            amps.push_back(json::array({a.real(), a.imag()}));
        }
        payload["state"] = json{{"dim", 4}, {"amplitudes", amps}};
        emit_json(with_metadata("prep", params, payload), prep_out);
    });

    // curves: pure-state comparison of the two inequalities.
    auto* curves_cmd = app.add_subcommand(
        "curves", "Pure-state inequality values across alpha");
    int curves_steps = 50;
    std::string curves_format = "csv";
    std::string curves_out;
    curves_cmd->add_option("--alpha-steps", curves_steps,
                           "Grid points along alpha");
    curves_cmd->add_option("--format", curves_format, "csv, json or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    curves_cmd->add_option("--out", curves_out, "Output file");
    curves_cmd->callback([&] {
        if (curves_steps < 2) {
            throw PreconditionError("grid_steps",
                                    "at least 2 alpha steps are required",
                                    curves_steps);
        }
        std::vector<double> grid(curves_steps);
        const double lo = 0.01;
        const double hi = kPi / 4;
        for (int i = 0; i < curves_steps; ++i) {
            grid[i] = lo + (hi - lo) * i / (curves_steps - 1);
        }
        std::vector<CurvePoint> rows = pure_state_curves(grid);
        json params{{"alpha_steps", curves_steps}, {"format", curves_format}};
        if (curves_format == "csv") {
            emit_text(curves_csv(rows, csv_metadata_lines("curves", params)),
                      curves_out);
        } else if (curves_format == "json") {
            json payload{{"rows", curves_json(rows)}};
            emit_json(with_metadata("curves", params, payload), curves_out);
        } else {
            emit_text(svg_metadata_comment("curves", params) +
                          curves_svg(rows),
                      curves_out);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
