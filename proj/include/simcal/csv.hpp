#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "simcal/calibration.hpp"
#include "simcal/metrics.hpp"
#include "simcal/observables.hpp"

namespace simcal {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// Strict double parse: whole token, finite value. `where` goes into the
// error message.
double parse_double(const std::string& token, const std::string& where);

// Write-to-temp-then-rename, so a reader never sees a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// sim_database.csv: header + one row per sample, the seven observables in
// canonical order.
void write_sim_database_csv(const std::filesystem::path& path,
                            const std::vector<ObservableVector>& rows);
std::vector<ObservableVector> read_sim_database_csv(const std::filesystem::path& path);

// shots.csv: shot_index, campaign, seven sim_* columns, seven exp_* columns.
void write_shots_csv(const std::filesystem::path& path,
                     const std::vector<ShotRecord>& shots);
std::vector<ShotRecord> read_shots_csv(const std::filesystem::path& path);

// learning_curve.csv: n, campaign of the n-th ingested shot, seven err_*
// columns (fractions).
void write_learning_curve_csv(const std::filesystem::path& path,
                              const LearningCurve& curve,
                              const std::vector<std::string>& campaigns);

void write_actual_vs_predicted_csv(const std::filesystem::path& path,
                                   const std::vector<ActualVsPredictedRow>& rows);

}  // namespace simcal
