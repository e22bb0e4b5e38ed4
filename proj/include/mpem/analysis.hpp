// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpem/estimators.hpp"
#include "mpem/measurement.hpp"
#include "mpem/types.hpp"

// Turns a measurement set into weight estimates, coefficient vectors,
// radiation resistances and (when true orientations are known) RMSE values
// for each requested method. This is the shared back end of the campaign
// runner and the `estimate` command.

namespace mpem
{

    enum class Method
    {
        MI,
        LSE,
        CLSE
    };

    const char* method_name(Method m);
    std::optional<Method> parse_method(const std::string& name);

    struct AnalysisOptions
    {
        std::vector<Method> methods{Method::MI, Method::LSE, Method::CLSE};
        Eigen::Index subset_k = 3;
        SelectionStrategy strategy = SelectionStrategy::Exhaustive;
        std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
        double condition_ceiling = kDefaultConditionCeiling;
    };

    // One method applied to one antenna under test. On estimator failure
    // `error` carries the diagnostic and the numeric fields are unset.
    struct MethodRow
    {
        Method method{Method::MI};
        OrientationWeights<double> weights = OrientationWeights<double>::Zero();
        ComplexVector3<double> a = ComplexVector3<double>::Zero();
        double r_r_ohms = 0.0;
        double imag_norm = 0.0;              // matrix-inversion diagnostic; 0 elsewhere
        std::optional<double> rmse_db;       // absent when the truth is unknown
        std::string error;

        bool ok() const { return error.empty(); }
    };

    struct AutReport
    {
        std::string label;
        std::optional<std::array<double, 2>> orientation_deg;
        std::vector<MethodRow> rows;
    };

    struct MethodMeans
    {
        double rmse_db = 0.0;
        double r_r_ohms = 0.0;
        int count = 0;            // rows contributing to the means
        bool rmse_defined = false;
    };

    struct EstimateReport
    {
        double frequency_hz = 0.0;
        std::vector<std::string> sense_ids;
        bool crosstalk_corrected = false;
        std::optional<SubsetSelectionD> selection; // present when MI ran
        std::vector<AutReport> auts;
        std::map<Method, MethodMeans> means;
    };

    EstimateReport estimate_report(const MeasurementSet& set, const AnalysisOptions& options);

} // namespace mpem
