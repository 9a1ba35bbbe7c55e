#include "levyexp/io.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace levyexp {

namespace {

using json = nlohmann::json;

std::string format_value(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out.is_open()) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

json fit_to_json(const OrderFitResult& fit) {
    json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    j["points_used"] = fit.points_used;
    if (!fit.warnings.empty()) {
        j["warnings"] = fit.warnings;
    }
    return j;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path,
                          const SpaceLayout& layout, const Trajectory& traj,
                          int stride) {
    if (stride < 1) {
        throw std::invalid_argument("write_trajectory_csv: stride must be >= 1");
    }
    std::ofstream out = open_output(path);
    out << "time";
    for (int c = 0; c < layout.components(); ++c) {
        for (int i = 0; i < layout.n_nodes(); ++i) {
            out << ",c" << c << "_n" << i;
        }
    }
    out << "\n";
    for (int m = 0; m <= traj.steps(); m += stride) {
        out << format_value(traj.times[m]);
        for (int i = 0; i < traj.states.rows(); ++i) {
            out << "," << format_value(traj.states(i, m));
        }
        out << "\n";
    }
}

void write_levy_path_csv(const std::filesystem::path& path,
                         const SpaceLayout& layout, const LevyPath& jumps) {
    std::ofstream out = open_output(path);
    out << "jump_time,mark_norm\n";
    for (std::size_t i = 0; i < jumps.jump_times.size(); ++i) {
        out << format_value(jumps.jump_times[i]) << ","
            << format_value(layout.norm(jumps.marks[i])) << "\n";
    }
}

void write_order_study_csv(const std::filesystem::path& path,
                           const OrderStudyResult& result) {
    std::ofstream out = open_output(path);
    out << "order,epsilon,median_sup,q25_sup,q75_sup,moment_estimate,"
           "moment_std_error\n";
    for (const auto& block : result.blocks) {
        for (const auto& row : block.rows) {
            out << block.order << "," << format_value(row.epsilon) << ","
                << format_value(row.median_sup) << ","
                << format_value(row.q25) << "," << format_value(row.q75)
                << "," << format_value(row.moment_estimate) << ","
                << format_value(row.moment_std_error) << "\n";
        }
    }
}

void write_run_summary_json(const std::filesystem::path& path,
                            const ProblemSetup& setup,
                            const std::string& command,
                            const OrderStudyResult* study,
                            const ValidationReport* validation) {
    json root;
    root["version"] = kVersionTag;
    root["command"] = command;
    root["master_seed"] = setup.config.master_seed;

    json config;
    const FlatDoc resolved = setup.config.resolved_document();
    for (const auto& [key, value] : resolved.entries()) {
        config[key] = value;
    }
    root["config"] = config;

    json rates;
    rates["omega"] = setup.omega();
    rates["eta"] = setup.eta();
    rates["gap"] = setup.gap();
    root["rates"] = rates;

    if (study != nullptr) {
        json blocks = json::array();
        for (const auto& block : study->blocks) {
            json b;
            b["order"] = block.order;
            b["sup_fit"] = fit_to_json(block.sup_fit);
            b["moment_fit"] = fit_to_json(block.moment_fit);
            b["shrink_violation_fraction"] = block.shrink_violation_fraction;
            json rows = json::array();
            for (const auto& row : block.rows) {
                json r;
                r["epsilon"] = row.epsilon;
                r["median_sup"] = row.median_sup;
                r["q25_sup"] = row.q25;
                r["q75_sup"] = row.q75;
                r["moment_estimate"] = row.moment_estimate;
                r["moment_std_error"] = row.moment_std_error;
                rows.push_back(r);
            }
            b["rows"] = rows;
            blocks.push_back(b);
        }
        root["order_study"] = blocks;
        // Headline number: measured exponent of the configured order.
        root["slope"] = study->blocks.back().sup_fit.slope;
        root["moment_slope"] = study->blocks.back().moment_fit.slope;
    }

    if (validation != nullptr) {
        json checks = json::array();
        for (const auto& check : validation->checks) {
            json c;
            c["name"] = check.name;
            c["passed"] = check.passed;
            c["detail"] = check.detail;
            checks.push_back(c);
        }
        root["validation"] = checks;
        root["validation_passed"] = validation->all_passed();
        if (!validation->warnings.empty()) {
            root["warnings"] = validation->warnings;
        }
    }

    std::ofstream out = open_output(path);
    out << root.dump(2) << "\n";
}

}  // namespace levyexp
