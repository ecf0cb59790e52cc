#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairspace/central.hpp"
#include "pairspace/collinear.hpp"
#include "pairspace/dziobek.hpp"
#include "pairspace/integrate.hpp"
#include "pairspace/masses.hpp"
#include "pairspace/state.hpp"
#include "pairspace/vec3.hpp"

namespace pairspace {

/// Malformed or inconsistent input file. The message carries the location
/// (line/column for parse errors, field name for validation errors).
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Contents of a state file:
/// { "G": number, "masses": [..], "positions": [[x,y,z],..], "velocities": [[..],..] }
/// positions/velocities are optional for mass-only commands.
struct InputFile {
    double G = 1.0;
    std::vector<double> masses;
    std::optional<std::vector<Vec3>> positions;
    std::optional<std::vector<Vec3>> velocities;

    MassVector mass_vector() const { return MassVector(masses); }

    SystemState state() const {
        if (!positions)
            throw InputError("input: field 'positions' is required for this command");
        std::vector<Vec3> vel =
            velocities ? *velocities : std::vector<Vec3>(positions->size(), Vec3{});
        return SystemState(*positions, std::move(vel), G);
    }
};

namespace detail {

inline std::vector<Vec3> parse_vec3_list(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array())
        throw InputError("input: field '" + field + "' must be an array of [x,y,z] triples");
    std::vector<Vec3> out;
    out.reserve(j.size());
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 3 || !row[0].is_number() || !row[1].is_number() ||
            !row[2].is_number())
            throw InputError("input: field '" + field + "' entries must be [x,y,z] numbers");
        out.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
    }
    return out;
}

inline std::string location_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace detail

inline InputFile parse_input(const std::string& text, const std::string& origin = "<input>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(origin + ": malformed JSON at " +
                         detail::location_of(text, e.byte ? e.byte - 1 : 0) + ": " + e.what());
    }
    if (!j.is_object())
        throw InputError(origin + ": top level must be a JSON object");

    InputFile input;
    if (j.contains("G")) {
        if (!j["G"].is_number() || !(j["G"].get<double>() > 0.0))
            throw InputError(origin + ": field 'G' must be a positive number");
        input.G = j["G"].get<double>();
    }
    if (!j.contains("masses"))
        throw InputError(origin + ": field 'masses' is required");
    if (!j["masses"].is_array() || j["masses"].size() < 2)
        throw InputError(origin + ": field 'masses' must list at least two masses");
    for (const auto& m : j["masses"]) {
        if (!m.is_number() || !(m.get<double>() > 0.0))
            throw InputError(origin + ": field 'masses' entries must be positive numbers");
        input.masses.push_back(m.get<double>());
    }
    if (j.contains("positions")) {
        input.positions = detail::parse_vec3_list(j["positions"], "positions");
        if (input.positions->size() != input.masses.size())
            throw InputError(origin + ": 'positions' length must match 'masses'");
    }
    if (j.contains("velocities")) {
        if (!input.positions)
            throw InputError(origin + ": 'velocities' without 'positions'");
        input.velocities = detail::parse_vec3_list(j["velocities"], "velocities");
        if (input.velocities->size() != input.masses.size())
            throw InputError(origin + ": 'velocities' length must match 'masses'");
    }
    return input;
}

inline InputFile load_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_input(buf.str(), path);
}

// --- json builders -------------------------------------------------------

inline nlohmann::json to_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

inline nlohmann::json state_json(const MassVector& mv, const SystemState& s) {
    nlohmann::json j;
    j["G"] = s.G;
    j["masses"] = mv.masses();
    nlohmann::json pos = nlohmann::json::array();
    nlohmann::json vel = nlohmann::json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        pos.push_back(to_json(s.positions[i]));
        vel.push_back(to_json(s.velocities[i]));
    }
    j["positions"] = pos;
    j["velocities"] = vel;
    return j;
}

// pairs reported with 1-based body numbers
inline nlohmann::json pair_label(std::size_t i, std::size_t j) {
    return nlohmann::json::array({i + 1, j + 1});
}

inline nlohmann::json classification_json(const CentralityReport& report, std::size_t n) {
    nlohmann::json j;
    j["classification"] = to_string(report.classification);
    j["collinear"] = report.collinear;
    j["fixed_line"] =
        report.fixed_line ? nlohmann::json(*report.fixed_line) : nlohmann::json(nullptr);
    j["lambda"] = report.lambda ? nlohmann::json(*report.lambda) : nlohmann::json(nullptr);
    j["lambda_residual"] = report.lambda_residual ? nlohmann::json(*report.lambda_residual)
                                                  : nlohmann::json(nullptr);
    j["max_residual"] = report.max_residual;
    nlohmann::json residuals = nlohmann::json::array();
    if (!report.scaled.empty()) {
        std::size_t p = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k, ++p) {
                nlohmann::json entry;
                entry["pair"] = pair_label(i, k);
                entry["norm"] = norm(report.residuals[p]);
                entry["scaled"] = report.scaled[p];
                residuals.push_back(entry);
            }
    }
    j["residuals"] = residuals;
    return j;
}

inline nlohmann::json bracket_json(const BoundBracket& b) {
    nlohmann::json j;
    switch (b.quantity) {
        case BoundQuantity::Alpha3Body: j["quantity"] = "alpha_three_body"; break;
        case BoundQuantity::LengthRatio: j["quantity"] = "length_ratio"; break;
        case BoundQuantity::AlphaNBody: j["quantity"] = "alpha_n_body"; break;
    }
    j["case"] = b.case_id;
    j["lower"] = b.lower ? nlohmann::json(*b.lower) : nlohmann::json(nullptr);
    j["upper"] = b.upper ? nlohmann::json(*b.upper) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json collinear_json(const MassVector& slot_masses, const CollinearSolution& sol) {
    nlohmann::json j;
    nlohmann::json ordering = nlohmann::json::array();
    for (int b : sol.ordering) ordering.push_back(b + 1);
    j["ordering"] = ordering;
    j["x"] = sol.x;
    j["alpha"] = sol.alpha;
    j["beta"] = sol.beta;
    j["length_ratio"] = sol.length_ratio;
    j["residual_norm"] = sol.residual_norm;
    j["iterations"] = sol.iterations;

    const double star = collapsed_root(slot_masses);
    j["collapsed_root"] = star;
    j["length_bound"] = bracket_json(length_bound(slot_masses));
    j["alpha_bound"] = bracket_json(alpha_bound(slot_masses));
    if (slot_masses.size() == 3)
        j["three_body_bracket"] = bracket_json(three_body_bracket(slot_masses));
    j["alpha_within_bound"] = sol.alpha <= *alpha_bound(slot_masses).upper + 1e-9;
    j["length_within_bound"] = sol.length_ratio >= *length_bound(slot_masses).lower - 1e-9;
    j["beta_above_collapsed_root"] = sol.beta >= star - 1e-9;
    return j;
}

inline nlohmann::json conservation_json(const ConservationReport& report) {
    nlohmann::json j;
    nlohmann::json drifts = nlohmann::json::array();
    std::size_t p = 0;
    for (std::size_t i = 0; i < report.bodies; ++i)
        for (std::size_t k = i + 1; k < report.bodies; ++k, ++p) {
            nlohmann::json entry;
            entry["pair"] = pair_label(i, k);
            entry["drift"] = report.pair_drift[p];
            drifts.push_back(entry);
        }
    j["pair_L_drift"] = drifts;
    j["total_L_drift"] = report.total_drift;
    j["energy_drift"] = report.energy_drift;
    return j;
}

inline nlohmann::json admissibility_json(const AdmissibilityReport& report,
                                         const PairConfiguration& pc) {
    nlohmann::json j;
    j["admissible"] = report.admissible;
    j["max_scaled_determinant"] = report.max_scaled;
    nlohmann::json per_j = nlohmann::json::array();
    for (std::size_t i = 0; i < report.per_j_max.size(); ++i) {
        nlohmann::json entry;
        entry["excluded_body"] = i + 1;
        entry["max_scaled_determinant"] = report.per_j_max[i];
        per_j.push_back(entry);
    }
    j["determinants"] = per_j;
    nlohmann::json per_probe = nlohmann::json::array();
    for (const Vec3& h : report.probes) {
        nlohmann::json entry;
        entry["probe"] = to_json(h);
        entry["scaled_determinants"] = determinant_relations(pc, h);
        per_probe.push_back(entry);
    }
    j["per_probe"] = per_probe;
    if (pc.size() == 4) {
        const std::array<double, 4> products = dziobek_products(pc);
        j["dziobek_products"] = std::vector<double>(products.begin(), products.end());
    }
    return j;
}

// --- csv writers ----------------------------------------------------------

namespace detail {

inline void append_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v); // canonicalize -0
    out += buf;
}

} // namespace detail

/// Columns: t, then x,y,z,vx,vy,vz per body.
inline std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t";
    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    for (std::size_t i = 1; i <= n; ++i) {
        const std::string b = std::to_string(i);
        out += ",x" + b + ",y" + b + ",z" + b + ",vx" + b + ",vy" + b + ",vz" + b;
    }
    out += "\n";
    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        detail::append_double(out, traj.times[s]);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3& r = traj.states[s].positions[i];
            const Vec3& v = traj.states[s].velocities[i];
            for (double c : {r.x, r.y, r.z, v.x, v.y, v.z}) {
                out += ',';
                detail::append_double(out, c);
            }
        }
        out += "\n";
    }
    return out;
}

/// Samples of the three-body E and the collapsed E* on a log-spaced grid.
inline std::string efunction_csv(const MassVector& slot_masses, double lo, double hi,
                                 int samples) {
    std::string out = "x,E_collapsed";
    const bool three = slot_masses.size() == 3;
    if (three) out += ",E3";
    out += "\n";
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        const double x = lo * std::pow(hi / lo, t);
        detail::append_double(out, x);
        out += ',';
        detail::append_double(out, collapsed_euler_function(slot_masses, x));
        if (three) {
            out += ',';
            detail::append_double(out, euler_function(slot_masses, x));
        }
        out += "\n";
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError(path + ": cannot open for writing");
    out << content;
}

} // namespace pairspace
