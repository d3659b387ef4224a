#include "steerkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "steerkit/errors.hpp"
#include "steerkit/version.hpp"

namespace steerkit {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

json direction_json(const MeasurementDirection& d) {
    return json{{"tau", d.tau()}, {"gamma", d.gamma()}, {"label", d.label()}};
}

std::string method_name(ThresholdMethod m) {
    return m == ThresholdMethod::usual_lsi_analytic ? "usual_lsi_analytic"
                                                    : "glsi_numeric";
}

}  // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::pure: return "pure";
        case Family::werner: return "werner";
        case Family::asymmetric: return "asymmetric";
        case Family::raw: return "raw";
    }
    throw PreconditionError("family_name", "unknown family value",
                            static_cast<double>(family));
}

Family family_from_name(const std::string& name) {
    if (name == "pure") return Family::pure;
    if (name == "werner") return Family::werner;
    if (name == "asymmetric") return Family::asymmetric;
    if (name == "raw") return Family::raw;
    throw PreconditionError("family_name",
                            "family must be pure, werner, asymmetric or raw",
                            0.0);
}

json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (int r = 0; r < m.dim(); ++r) {
        for (int c = 0; c < m.dim(); ++c) {
            cplx v = m.at(r, c);
            entries.push_back(json::array({v.real(), v.imag()}));
        }
    }
    return json{{"dim", m.dim()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw PreconditionError(
            "matrix_format", "expected an object with dim and entries", 0.0);
    }
    if (!j["dim"].is_number_integer()) {
        throw PreconditionError("matrix_format", "dim must be an integer", 0.0);
    }
    int dim = j["dim"].get<int>();
    if (dim != 2 && dim != 4) {
        throw PreconditionError("matrix_format", "dim must be 2 or 4",
                                static_cast<double>(dim));
    }
    const json& entries = j["entries"];
    if (!entries.is_array() ||
        entries.size() != static_cast<std::size_t>(dim) * dim) {
        throw PreconditionError("matrix_format",
                                "entries must hold dim*dim [re, im] pairs",
                                static_cast<double>(entries.size()));
    }
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            const json& e = entries[static_cast<std::size_t>(r) * dim + c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
                !e[1].is_number()) {
                throw PreconditionError("matrix_format",
                                        "each entry must be an [re, im] pair",
                                        static_cast<double>(r * dim + c));
            }
            m.at(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

ComplexMatrix load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw PreconditionError("state_file", "cannot open " + path, 0.0);
    }
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw PreconditionError("state_file",
                                std::string("invalid JSON: ") + e.what(), 0.0);
    }
    ComplexMatrix m = matrix_from_json(doc);
    validate_density(m, 1e-8);
    return m;
}

json correlators_json(const Correlators& c) {
    return json{{"xx", c.xx}, {"yy", c.yy}, {"xy", c.xy},
                {"yx", c.yx}, {"zz", c.zz}, {"bz", c.bz}};
}

json inequality_report_json(const InequalityReport& report) {
    json strategies = json::array();
    for (const LhsStrategy& s : report.maximizing_strategies) {
        strategies.push_back(json{{"assignment", s.assignment},
                                  {"max_eigenvalue", s.max_eigenvalue}});
    }
    return json{{"s3", report.s3},
                {"s3_prime", report.s3_prime},
                {"c_lhs", report.c_lhs},
                {"c_lhs_prime", report.c_lhs_prime},
                {"theta_star", report.theta},
                {"phi", report.phi},
                {"signs", json::array({report.signs.sx, report.signs.sy,
                                       report.signs.sz})},
                {"violation", report.violation},
                {"correlators", correlators_json(report.correlators)},
                {"maximizing_strategies", strategies}};
}

json paradox_report_json(const ParadoxReport& report) {
    json terms = json::array();
    for (const ParadoxTerm& t : report.per_term) {
        terms.push_back(json{{"direction", direction_json(t.direction)},
                             {"outcome", t.outcome},
                             {"contribution", t.contribution}});
    }
    return json{{"quantum_total", report.quantum_total},
                {"lhs_prediction", report.lhs_prediction},
                {"settings_count", report.settings_count},
                {"per_term", terms}};
}

json threshold_json(const ThresholdResult& result) {
    json out;
    out["alpha"] = result.alpha;
    if (result.v_threshold.has_value()) {
        out["v_threshold"] = *result.v_threshold;
    } else {
        out["v_threshold"] = "undetectable";
    }
    out["method"] = method_name(result.method);
    if (result.theta_star.has_value()) {
        out["theta_star"] = *result.theta_star;
    } else {
        out["theta_star"] = nullptr;
    }
    return out;
}

json detection_json(const Detection& d) {
    return json{
        {"theta_star", d.theta_star},
        {"phi_star", d.phi_star},
        {"signs", json::array({d.signs.sx, d.signs.sy, d.signs.sz})},
        {"violation", d.violation}};
}

json estimate_json(const EstimateReport& report) {
    json settings = json::array();
    for (const SettingCounts& s : report.settings) {
        settings.push_back(json{{"label", s.label},
                                {"shots", s.shots},
                                {"counts", s.counts}});
    }
    return json{{"estimate", report.estimate},
                {"std_error", report.std_error},
                {"shots", report.shots},
                {"true_value", report.true_value},
                {"seed", report.seed},
                {"generator", report.generator},
                {"settings", settings}};
}

json region_json(const RegionTable& table) {
    return json{{"family", family_name(table.family)},
                {"alpha_grid", table.alpha_grid},
                {"v_grid", table.v_grid},
                {"usual_value", table.usual_value},
                {"detected_usual", table.detected_usual},
                {"glsi_violation", table.glsi_violation},
                {"glsi_theta_star", table.glsi_theta_star},
                {"detected_glsi", table.detected_glsi}};
}

json curves_json(const std::vector<CurvePoint>& rows) {
    json out = json::array();
    for (const CurvePoint& p : rows) {
        out.push_back(json{{"alpha", p.alpha},
                           {"usual_value", p.usual_value},
                           {"usual_bound", p.usual_bound},
                           {"glsi_violation", p.glsi_violation},
                           {"glsi_theta_star", p.glsi_theta_star}});
    }
    return out;
}

json make_metadata(const std::string& command, const json& parameters) {
    return json{{"tool", kToolName},
                {"version", kVersion},
                {"command", command},
                {"parameters", parameters}};
}

std::vector<std::string> csv_metadata_lines(const std::string& command,
                                            const json& parameters) {
    std::vector<std::string> lines;
    lines.push_back(std::string("# tool=") + kToolName + " version=" +
                    kVersion);
    std::string params = "# command=" + command;
    for (auto it = parameters.begin(); it != parameters.end(); ++it) {
        std::string value = it.value().is_string()
                                ? it.value().get<std::string>()
                                : it.value().dump();
        params += " " + it.key() + "=" + value;
    }
    lines.push_back(params);
    return lines;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

const char* kRegionHeader =
    "family,alpha,visibility,usual_value,usual_bound,usual_detected,"
    "glsi_theta_star,glsi_violation,glsi_detected";

}  // namespace

std::string region_csv(const RegionTable& table,
                       const std::vector<std::string>& metadata_lines) {
    std::ostringstream out;
    for (const std::string& line : metadata_lines) out << line << '\n';
    out << kRegionHeader << '\n';
    const std::string family = family_name(table.family);
    for (std::size_t i = 0; i < table.alpha_grid.size(); ++i) {
        for (std::size_t j = 0; j < table.v_grid.size(); ++j) {
            out << family << ',' << format_double(table.alpha_grid[i]) << ','
                << format_double(table.v_grid[j]) << ','
                << format_double(table.usual_value[i][j]) << ','
                << format_double(kSqrt3) << ','
                << int(table.detected_usual[i][j]) << ','
                << format_double(table.glsi_theta_star[i][j]) << ','
                << format_double(table.glsi_violation[i][j]) << ','
                << int(table.detected_glsi[i][j]) << '\n';
        }
    }
    return out.str();
}

std::string curves_csv(const std::vector<CurvePoint>& rows,
                       const std::vector<std::string>& metadata_lines) {
    std::ostringstream out;
    for (const std::string& line : metadata_lines) out << line << '\n';
    out << kRegionHeader << '\n';
    for (const CurvePoint& p : rows) {
        out << "pure," << format_double(p.alpha) << ",1,"
            << format_double(p.usual_value) << ','
            << format_double(p.usual_bound) << ','
            << (p.usual_value > p.usual_bound ? 1 : 0) << ','
            << format_double(p.glsi_theta_star) << ','
            << format_double(p.glsi_violation) << ','
            << (p.glsi_violation > 0.0 ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace steerkit
