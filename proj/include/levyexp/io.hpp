#pragma once

#include <filesystem>
#include <string>

#include "levyexp/analysis.hpp"
#include "levyexp/problem.hpp"

namespace levyexp {

inline constexpr const char* kVersionTag = "levyexp 0.1.0";

/// CSV with header `time,c<component>_n<node>,...`, '.' decimal separator,
/// optional row thinning.
void write_trajectory_csv(const std::filesystem::path& path,
                          const SpaceLayout& layout, const Trajectory& traj,
                          int stride = 1);

/// CSV with header `jump_time,mark_norm` (weighted norm).
void write_levy_path_csv(const std::filesystem::path& path,
                         const SpaceLayout& layout, const LevyPath& jumps);

/// One row per (order, epsilon) with the study statistics.
void write_order_study_csv(const std::filesystem::path& path,
                           const OrderStudyResult& result);

/// JSON summary embedding the fully resolved config, the version tag, the
/// seeds, the rate report, and (if present) the order study fits.
void write_run_summary_json(const std::filesystem::path& path,
                            const ProblemSetup& setup,
                            const std::string& command,
                            const OrderStudyResult* study = nullptr,
                            const ValidationReport* validation = nullptr);

}  // namespace levyexp
