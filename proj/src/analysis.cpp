// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mpem/analysis.hpp"

#include <cmath>
#include <limits>

#include "mpem/constants.hpp"
#include "mpem/vsh.hpp"

namespace mpem
{

    const char* method_name(Method m)
    {
        switch (m)
        {
        case Method::MI:
            return "mi";
        case Method::LSE:
            return "lse";
        case Method::CLSE:
            return "clse";
        }
        return "?";
    }

    std::optional<Method> parse_method(const std::string& name)
    {
        if (name == "mi")
            return Method::MI;
        if (name == "lse")
            return Method::LSE;
        if (name == "clse")
            return Method::CLSE;
        return std::nullopt;
    }

    namespace
    {
        ComplexMatrixX<double> select_rows(const ComplexMatrixX<double>& v,
                                           const std::vector<Eigen::Index>& rows)
        {
            ComplexMatrixX<double> out(static_cast<Eigen::Index>(rows.size()), v.cols());
            for (std::size_t i = 0; i < rows.size(); ++i)
                out.row(static_cast<Eigen::Index>(i)) = v.row(rows[i]);
            return out;
        }

        ComplexVectorX<double> select_entries(const ComplexVectorX<double>& v,
                                              const std::vector<Eigen::Index>& rows)
        {
            ComplexVectorX<double> out(static_cast<Eigen::Index>(rows.size()));
            for (std::size_t i = 0; i < rows.size(); ++i)
                out(static_cast<Eigen::Index>(i)) = v(rows[i]);
            return out;
        }
    } // namespace

    EstimateReport estimate_report(const MeasurementSet& set, const AnalysisOptions& options)
    {
        set.validate();
        if (options.methods.empty())
            throw std::invalid_argument("estimate_report: no methods requested");

        EstimateReport report;
        report.frequency_hz = set.frequency_hz;
        report.sense_ids = set.sense_ids;

        const auto constants = PhysicalConstantsD::from_frequency(set.frequency_hz);
        const ComplexMatrix3<double> a_r = reference_coefficient_matrix(constants);

        // Crosstalk correction is applied once, at ingestion, before the
        // calibration matrix feeds subset selection or any estimator.
        ComplexMatrixX<double> v_cal(set.n_sense(), 3);
        for (int i = 0; i < 3; ++i)
            v_cal.col(i) = set.references[static_cast<std::size_t>(i)].voltages;
        std::vector<ComplexVectorX<double>> v_auts;
        v_auts.reserve(set.auts.size());
        for (const auto& block : set.auts)
            v_auts.push_back(block.voltages);

        if (set.crosstalk)
        {
            v_cal = correct_crosstalk(*set.crosstalk, v_cal, options.condition_ceiling);
            for (auto& v : v_auts)
                v = correct_crosstalk(*set.crosstalk, v, options.condition_ceiling);
            report.crosstalk_corrected = true;
        }

        const bool wants_mi =
            std::find(options.methods.begin(), options.methods.end(), Method::MI) !=
            options.methods.end();

        std::vector<Eigen::Index> mi_rows;
        if (wants_mi)
        {
            report.selection = select_subset(v_cal, options.subset_k, options.strategy,
                                             options.enumeration_budget);
            mi_rows = report.selection->indices;
        }
        const ComplexMatrixX<double> v_cal_mi =
            wants_mi ? select_rows(v_cal, mi_rows) : ComplexMatrixX<double>();

        struct Accumulator
        {
            double rmse_sum = 0.0;
            double rr_sum = 0.0;
            int count = 0;
            int rmse_count = 0;
        };
        std::map<Method, Accumulator> acc;

        for (std::size_t j = 0; j < set.auts.size(); ++j)
        {
            const auto& block = set.auts[j];
            AutReport aut;
            aut.label = block.label;
            aut.orientation_deg = block.orientation_deg;

            std::optional<OrientationWeights<double>> w_true;
            if (block.orientation_deg)
                w_true = dipole_weights(SphericalAngleD::from_degrees((*block.orientation_deg)[0],
                                                                      (*block.orientation_deg)[1]));

            for (const Method method : options.methods)
            {
                MethodRow row;
                row.method = method;
                try
                {
                    switch (method)
                    {
                    case Method::MI:
                    {
                        const auto est = mi_estimate(v_cal_mi, select_entries(v_auts[j], mi_rows),
                                                     options.condition_ceiling);
                        row.weights = est.weights;
                        row.imag_norm = est.imag_norm;
                        break;
                    }
                    case Method::LSE:
                        row.weights = lse_estimate(v_cal, v_auts[j], options.condition_ceiling);
                        break;
                    case Method::CLSE:
                        row.weights = clse_estimate(v_cal, v_auts[j]).weights;
                        break;
                    }
                    row.a = a_r * row.weights.cast<cplx_t>();
                    const double power =
                        radiated_power(VshCoefficients<double>::from_l1(row.a), constants);
                    row.r_r_ohms = radiation_resistance(power, constants);
                    if (w_true)
                        row.rmse_db = reported_rmse_db(row.weights, *w_true);

                    auto& a = acc[method];
                    a.rr_sum += row.r_r_ohms;
                    a.count += 1;
                    if (row.rmse_db)
                    {
                        a.rmse_sum += *row.rmse_db;
                        a.rmse_count += 1;
                    }
                }
                catch (const NumericalError& e)
                {
                    row.error = std::string("aut '") + block.label + "', method " +
                                method_name(method) + ": " + e.what();
                }
                aut.rows.push_back(std::move(row));
            }
            report.auts.push_back(std::move(aut));
        }

        for (const Method method : options.methods)
        {
            const auto it = acc.find(method);
            MethodMeans m;
            if (it != acc.end() && it->second.count > 0)
            {
                m.count = it->second.count;
                m.r_r_ohms = it->second.rr_sum / it->second.count;
                if (it->second.rmse_count > 0)
                {
                    m.rmse_defined = true;
                    m.rmse_db = it->second.rmse_sum / it->second.rmse_count;
                }
            }
            report.means[method] = m;
        }
        return report;
    }

} // namespace mpem
