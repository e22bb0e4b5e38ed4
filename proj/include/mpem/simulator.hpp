// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpem/analysis.hpp"
#include "mpem/measurement.hpp"
#include "mpem/stats.hpp"
#include "mpem/types.hpp"

// Synthetic multipath environment and campaign runner. A reverberant room is
// modeled as an iid circular complex Gaussian channel from coefficient space
// to the sense antennas, with additive receiver noise and optional
// multiplexer crosstalk. All randomness derives from (seed, purpose, index)
// streams, so results are bit-reproducible and independent of evaluation
// order, and toggling crosstalk or noise level never disturbs the draws of
// the other ingredients.

namespace mpem
{

    inline constexpr double kDefaultChannelScale = 1e-5; // volts per coefficient unit

    // Documentation-default per-sample noise standard deviation in volts,
    // about 24% of the rms sense voltage at the default geometry. Tuned so
    // the matrix-inversion method lands near -15 dB mean weight RMSE; a
    // modeling knob, not a physical claim.
    inline constexpr double kDefaultNoiseSigma = 2.5e-2; // placeholder until tuned

    struct EnvironmentConfig
    {
        int n_sense = 10;
        std::uint64_t seed = 1;
        double noise_sigma = kDefaultNoiseSigma;     // volts, >= 0
        double crosstalk_level = 0.0;                // off-diagonal magnitude bound, [0, 1)
        double channel_scale = kDefaultChannelScale; // volts per coefficient unit
        double frequency_hz = 3.0e9;
        double terminal_current_a = 1.0;
        std::optional<std::string> channel_file;     // preload T instead of drawing it

        void validate() const;
    };

    // Expected rms voltage at one sense antenna for a unit-norm weight
    // vector: channel_scale times the common reference coefficient norm.
    double signal_rms(const EnvironmentConfig& env);

    // The ten standard test orientations (degrees) used by default
    // campaigns; they spread over the upper hemisphere plus the equator.
    std::vector<std::array<double, 2>> default_aut_orientations();

    struct CampaignConfig
    {
        EnvironmentConfig environment;
        std::vector<std::array<double, 2>> aut_orientations_deg = default_aut_orientations();
        std::vector<Method> methods{Method::MI, Method::LSE, Method::CLSE};
        int subset_k = 3;
        SelectionStrategy strategy = SelectionStrategy::Exhaustive;

        void validate() const;
    };

    // iid circular complex Gaussian channel, deterministic per seed. Draws
    // are regenerated with an advanced stream index in the (measure-zero)
    // event of a rank-deficient draw.
    ComplexMatrixX<double> synth_channel(Eigen::Index n_sense, Eigen::Index n_vsh,
                                         std::uint64_t seed, double scale);

    // Identity plus off-diagonal complex entries uniform on the disk of the
    // given radius; regenerated with an advanced stream index if singular.
    ComplexMatrixX<double> synth_crosstalk(Eigen::Index n, double level, std::uint64_t seed);

    // Forward model: calibration columns M (T A_R e_i + n_i) and AUT vectors
    // M (T A_R w(theta, phi) + n_j), fresh noise per measurement.
    struct SimulatedMeasurements
    {
        CalibrationMatrix calibration;
        std::vector<MeasurementVector> auts;
    };
    SimulatedMeasurements simulate_measurements(const ComplexMatrixX<double>& t,
                                                const ComplexMatrix3<double>& a_r,
                                                const std::vector<std::array<double, 2>>& orientations_deg,
                                                double noise_sigma_v,
                                                const ComplexMatrixX<double>& crosstalk,
                                                std::uint64_t seed);

    // Full synthetic measurement set for one environment, file-shaped:
    // reference and AUT blocks carry the measured (crosstalk-corrupted)
    // voltages, and the crosstalk block is included whenever it is not the
    // identity. A preloaded channel (resolved from env.channel_file by the
    // CLI layer) replaces the random draw when supplied.
    MeasurementSet simulate_environment(const EnvironmentConfig& env,
                                        const std::vector<std::array<double, 2>>& aut_orientations_deg,
                                        const std::optional<ComplexMatrixX<double>>& preloaded_channel =
                                            std::nullopt);

    struct CampaignResult
    {
        CampaignConfig config;
        EstimateReport report;
    };

    // Calibration sweep, subset selection, every requested estimator on
    // every test orientation, RMSE against the exact axis-decomposition
    // weights, and radiation resistance. Deterministic per config.
    CampaignResult run_campaign(const CampaignConfig& config,
                                const std::optional<ComplexMatrixX<double>>& preloaded_channel =
                                    std::nullopt);

    // Per-subset scatter behind the entropy and condition trend studies.
    struct StudyRow
    {
        std::vector<Eigen::Index> indices;
        double h1 = 0.0;
        double condition = 0.0;
        std::vector<double> rmse_db; // one per AUT; NaN when the estimate failed
        double mean_rmse_db = 0.0;
    };

    struct StudyResult
    {
        CampaignConfig config;
        std::vector<StudyRow> rows;
        std::optional<double> spearman_h1_rmse;     // H1 vs per-subset mean RMSE
        std::optional<double> spearman_logcond_h1;  // log10 cond vs H1
    };

    // Evaluates the matrix-inversion estimator on every k-subset of sense
    // antennas and reports the 1-entropy, condition number and RMSE scatter.
    StudyResult entropy_study(const CampaignConfig& config,
                              std::uint64_t budget = kDefaultEnumerationBudget,
                              const std::optional<ComplexMatrixX<double>>& preloaded_channel =
                                  std::nullopt);

} // namespace mpem
