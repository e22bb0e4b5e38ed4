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
#include <optional>
#include <string>
#include <vector>

#include "mpem/errors.hpp"
#include "mpem/types.hpp"

// In-memory model of a measurement data set: the voltages observed at the
// sense antennas for each calibration orientation and each antenna under
// test, plus the multiplexer crosstalk characterization when available.
// Angles live here in degrees, exactly as they appear in files; conversion
// to radians happens where the math consumes them.

namespace mpem
{

    inline constexpr int kMeasurementSchemaVersion = 1;

    // Complex voltages recorded at every sense antenna for one excitation.
    struct MeasurementBlock
    {
        std::string label;
        std::optional<std::array<double, 2>> orientation_deg; // {theta, phi}, when known
        ComplexVectorX<double> voltages;
    };

    struct MeasurementSet
    {
        int schema_version = kMeasurementSchemaVersion;
        double frequency_hz = 3.0e9;
        std::vector<std::string> sense_ids;
        std::vector<MeasurementBlock> references; // labels "z", "x", "y"
        std::vector<MeasurementBlock> auts;
        std::optional<ComplexMatrixX<double>> crosstalk;

        Eigen::Index n_sense() const { return static_cast<Eigen::Index>(sense_ids.size()); }

        // Structural checks shared by file ingestion and the simulator.
        void validate() const
        {
            if (schema_version != kMeasurementSchemaVersion)
                throw SchemaError("measurement set: unrecognized schema_version " +
                                  std::to_string(schema_version));
            if (!(frequency_hz > 0))
                throw SchemaError("measurement set: frequency_hz must be positive");
            if (sense_ids.empty())
                throw SchemaError("measurement set: sense_ids must not be empty");
            const auto n = n_sense();
            const char* want[3] = {"z", "x", "y"};
            if (references.size() != 3)
                throw SchemaError("measurement set: expected exactly 3 reference blocks (z, x, y)");
            for (int i = 0; i < 3; ++i)
                if (references[static_cast<std::size_t>(i)].label != want[i])
                    throw SchemaError("measurement set: reference blocks must be labeled z, x, y in order");
            for (const auto& blocks : {references, auts})
                for (const auto& b : blocks)
                    if (b.voltages.size() != n)
                        throw SchemaError("measurement set: block '" + b.label + "' has " +
                                          std::to_string(b.voltages.size()) + " voltages, expected " +
                                          std::to_string(n));
            if (crosstalk && (crosstalk->rows() != n || crosstalk->cols() != n))
                throw SchemaError("measurement set: crosstalk matrix must be n_sense x n_sense");
        }
    };

    // Labeled calibration matrix: one column of sense-antenna voltages per
    // reference antenna, rows ordered like sense_ids.
    struct CalibrationMatrix
    {
        ComplexMatrixX<double> v_r;
        std::vector<std::string> sense_ids;
    };

    // Labeled voltage vector for a single antenna under test.
    struct MeasurementVector
    {
        ComplexVectorX<double> v;
        std::vector<std::string> sense_ids;
    };

} // namespace mpem
