// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpem/analysis.hpp"
#include "mpem/measurement.hpp"
#include "mpem/simulator.hpp"
#include "mpem/types.hpp"

// File formats. Measurement sets and results are JSON documents; measurement
// sets additionally round-trip through a flat CSV encoding, and pattern and
// study scatter data are CSV. Every format carries a schema_version, unknown
// keys are rejected with the offending path, angles are stored in degrees,
// complex numbers as (re, im) pairs, and non-finite RMSE values as the
// quoted "-inf" sentinel. Byte layouts are documented in
// docs/file-formats.md. All writers go through a temp-file + rename step so
// readers never observe partial files.

namespace mpem
{

    inline constexpr int kResultsSchemaVersion = 1;
    inline constexpr int kConfigSchemaVersion = 1;

    // ---- generic helpers ----

    // Shortest representation that parses back to the identical double.
    std::string format_double(double value);

    // Strict double parser; accepts "-inf", "inf", "nan" sentinels.
    double parse_double(const std::string& text, const std::string& where);

    void write_file_atomic(const std::filesystem::path& path, const std::string& content);
    std::string read_file(const std::filesystem::path& path);

    // ---- configuration ----

    struct ToolConfig
    {
        CampaignConfig campaign;
        int aggregate_seeds = 1; // study section
    };

    ToolConfig parse_config_text(const std::string& text, const std::string& origin);
    ToolConfig load_config(const std::filesystem::path& path);

    // Canonical JSON echo of a campaign configuration; parsing it back
    // reproduces the identical campaign.
    std::string config_to_json_text(const CampaignConfig& config);

    // ---- measurement sets ----

    std::string measurement_to_json_text(const MeasurementSet& set);
    MeasurementSet measurement_from_json_text(const std::string& text, const std::string& origin);

    std::string measurement_to_csv_text(const MeasurementSet& set);
    MeasurementSet measurement_from_csv_text(const std::string& text, const std::string& origin);

    // Dispatch on extension: ".json" or ".csv".
    void save_measurements(const std::filesystem::path& path, const MeasurementSet& set);
    MeasurementSet load_measurements(const std::filesystem::path& path);

    // ---- results ----

    struct ResultsSource
    {
        enum class Kind
        {
            Campaign,
            Measurements
        };
        Kind kind = Kind::Campaign;
        std::optional<CampaignConfig> config;  // campaign runs
        std::string measurements_path;         // estimate runs
        std::vector<Method> methods;           // estimate runs
        int subset_k = 3;                      // estimate runs
        SelectionStrategy strategy = SelectionStrategy::Exhaustive;
    };

    struct ResultsDoc
    {
        std::string tool_version;
        std::string created_utc;
        ResultsSource source;
        EstimateReport report;
    };

    std::string results_to_json_text(const ResultsDoc& doc);
    ResultsDoc results_from_json_text(const std::string& text, const std::string& origin);
    void save_results(const std::filesystem::path& path, const ResultsDoc& doc);
    ResultsDoc load_results(const std::filesystem::path& path);

    // Table-style summary export of a results document (write-only).
    std::string results_to_summary_csv_text(const ResultsDoc& doc);

    // ---- pattern grids ----

    struct PatternSample
    {
        double theta_deg = 0.0;
        double phi_deg = 0.0;
        cplx_t e_theta{0, 0};
        cplx_t e_phi{0, 0};
    };

    struct PatternFile
    {
        std::vector<PatternSample> samples; // theta-major
        std::map<std::string, std::string> footers;
    };

    std::string pattern_to_csv_text(const PatternFile& pattern);
    PatternFile pattern_from_csv_text(const std::string& text, const std::string& origin);
    void save_pattern(const std::filesystem::path& path, const PatternFile& pattern);
    PatternFile load_pattern(const std::filesystem::path& path);

    // ---- study scatter ----

    struct ScatterRow
    {
        std::uint64_t seed = 0;
        std::vector<Eigen::Index> indices;
        double h1 = 0.0;
        double condition = 0.0;
        std::vector<double> rmse_db;
        double mean_rmse_db = 0.0;
    };

    struct ScatterFile
    {
        std::vector<std::string> aut_labels;
        std::vector<ScatterRow> rows;
        std::optional<double> spearman_h1_mean_rmse;
        std::optional<double> spearman_log10cond_h1;
        int seeds = 1;
    };

    std::string scatter_to_csv_text(const ScatterFile& scatter);
    ScatterFile scatter_from_csv_text(const std::string& text, const std::string& origin);
    void save_scatter(const std::filesystem::path& path, const ScatterFile& scatter);
    ScatterFile load_scatter(const std::filesystem::path& path);

    // ---- channel preload hook ----

    // CSV with one row per sense antenna: re,im,re,im,re,im for the three
    // coefficient columns.
    ComplexMatrixX<double> load_channel_csv(const std::filesystem::path& path);

} // namespace mpem
