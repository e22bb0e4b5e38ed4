// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "mpem/simulator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "mpem/constants.hpp"
#include "mpem/rng.hpp"
#include "mpem/vsh.hpp"

namespace mpem
{

    void EnvironmentConfig::validate() const
    {
        if (n_sense < 3)
            throw std::invalid_argument("environment: n_sense must be at least 3");
        if (!(noise_sigma >= 0.0))
            throw std::invalid_argument("environment: noise_sigma must be >= 0");
        if (!(crosstalk_level >= 0.0 && crosstalk_level < 1.0))
            throw std::invalid_argument("environment: crosstalk_level must lie in [0, 1)");
        if (!(channel_scale > 0.0))
            throw std::invalid_argument("environment: channel_scale must be positive");
        if (!(frequency_hz > 0.0))
            throw std::invalid_argument("environment: frequency_hz must be positive");
        if (!(terminal_current_a > 0.0))
            throw std::invalid_argument("environment: terminal_current_a must be positive");
    }

    void CampaignConfig::validate() const
    {
        environment.validate();
        if (aut_orientations_deg.empty())
            throw std::invalid_argument("campaign: aut_orientations_deg must not be empty");
        if (methods.empty())
            throw std::invalid_argument("campaign: methods must not be empty");
        if (subset_k < 1 || subset_k > environment.n_sense)
            throw std::invalid_argument("campaign: subset_k must lie in [1, n_sense]");
    }

    double signal_rms(const EnvironmentConfig& env)
    {
        const auto constants =
            PhysicalConstantsD::from_frequency(env.frequency_hz, env.terminal_current_a);
        return env.channel_scale * axis_coefficient_magnitude(constants);
    }

    std::vector<std::array<double, 2>> default_aut_orientations()
    {
        return {{18, 0},  {18, 120}, {18, -120}, {42, 60},  {42, 180},
                {42, -60}, {90, 30},  {90, 120},  {90, 210}, {90, -60}};
    }

    ComplexMatrixX<double> synth_channel(Eigen::Index n_sense, Eigen::Index n_vsh,
                                         std::uint64_t seed, double scale)
    {
        if (n_sense < n_vsh)
            throw std::invalid_argument("synth_channel: require n_sense >= n_vsh");
        if (!(scale > 0.0))
            throw std::invalid_argument("synth_channel: scale must be positive");

        for (std::uint64_t attempt = 0;; ++attempt)
        {
            RandomStream rng(seed, "channel", attempt);
            ComplexMatrixX<double> t(n_sense, n_vsh);
            for (Eigen::Index i = 0; i < n_sense; ++i)
                for (Eigen::Index j = 0; j < n_vsh; ++j)
                    t(i, j) = scale * rng.next_complex_normal();

            Eigen::JacobiSVD<ComplexMatrixX<double>> svd(t);
            const auto& sv = svd.singularValues();
            if (sv(sv.size() - 1) > 1e-12 * sv(0))
                return t;
            // rank-deficient draw: advance the stream index and redraw
        }
    }

    ComplexMatrixX<double> synth_crosstalk(Eigen::Index n, double level, std::uint64_t seed)
    {
        if (!(level >= 0.0 && level < 1.0))
            throw std::invalid_argument("synth_crosstalk: level must lie in [0, 1)");
        if (level == 0.0)
            return ComplexMatrixX<double>::Identity(n, n);

        for (std::uint64_t attempt = 0;; ++attempt)
        {
            RandomStream rng(seed, "crosstalk", attempt);
            ComplexMatrixX<double> m = ComplexMatrixX<double>::Identity(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    if (i != j)
                        m(i, j) = rng.next_complex_in_disk(level);

            Eigen::JacobiSVD<ComplexMatrixX<double>> svd(m);
            const auto& sv = svd.singularValues();
            if (sv(sv.size() - 1) > 1e-9 * sv(0))
                return m;
        }
    }

    namespace
    {
        ComplexVectorX<double> complex_noise(Eigen::Index n, double sigma, RandomStream& rng)
        {
            ComplexVectorX<double> v(n);
            // draws are consumed even at sigma = 0, so changing the noise
            // level never shifts any other stream
            for (Eigen::Index i = 0; i < n; ++i)
                v(i) = sigma * rng.next_complex_normal();
            return v;
        }
    } // namespace

    SimulatedMeasurements simulate_measurements(const ComplexMatrixX<double>& t,
                                                const ComplexMatrix3<double>& a_r,
                                                const std::vector<std::array<double, 2>>& orientations_deg,
                                                double noise_sigma_v,
                                                const ComplexMatrixX<double>& crosstalk,
                                                std::uint64_t seed)
    {
        const Eigen::Index n = t.rows();
        if (t.cols() != 3)
            throw std::invalid_argument("simulate_measurements: channel must have 3 columns");
        if (crosstalk.rows() != n || crosstalk.cols() != n)
            throw std::invalid_argument("simulate_measurements: crosstalk dimension mismatch");

        std::vector<std::string> ids;
        ids.reserve(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i)
        {
            std::ostringstream os;
            os << "patch" << (i + 1 < 10 ? "0" : "") << (i + 1);
            ids.push_back(os.str());
        }

        const ComplexMatrixX<double> t_a = t * a_r; // sense voltages per unit weight

        SimulatedMeasurements sim;
        sim.calibration.sense_ids = ids;
        sim.calibration.v_r.resize(n, 3);
        for (int i = 0; i < 3; ++i)
        {
            RandomStream rng(seed, "noise/cal", static_cast<std::uint64_t>(i));
            sim.calibration.v_r.col(i) =
                crosstalk * (t_a.col(i) + complex_noise(n, noise_sigma_v, rng));
        }

        sim.auts.reserve(orientations_deg.size());
        for (std::size_t j = 0; j < orientations_deg.size(); ++j)
        {
            const auto w = dipole_weights(
                SphericalAngleD::from_degrees(orientations_deg[j][0], orientations_deg[j][1]));
            RandomStream rng(seed, "noise/aut", j);
            MeasurementVector mv;
            mv.sense_ids = ids;
            mv.v = crosstalk * (t_a * w.cast<cplx_t>() + complex_noise(n, noise_sigma_v, rng));
            sim.auts.push_back(std::move(mv));
        }
        return sim;
    }

    MeasurementSet simulate_environment(const EnvironmentConfig& env,
                                        const std::vector<std::array<double, 2>>& aut_orientations_deg,
                                        const std::optional<ComplexMatrixX<double>>& preloaded_channel)
    {
        env.validate();
        const auto constants =
            PhysicalConstantsD::from_frequency(env.frequency_hz, env.terminal_current_a);
        const ComplexMatrix3<double> a_r = reference_coefficient_matrix(constants);

        ComplexMatrixX<double> t;
        if (preloaded_channel)
        {
            if (preloaded_channel->rows() != env.n_sense || preloaded_channel->cols() != 3)
                throw std::invalid_argument("simulate_environment: preloaded channel must be n_sense x 3");
            t = *preloaded_channel;
        }
        else
        {
            if (env.channel_file)
                throw std::invalid_argument("simulate_environment: channel_file is set but no "
                                            "preloaded channel was supplied; resolve the file first");
            t = synth_channel(env.n_sense, 3, env.seed, env.channel_scale);
        }

        const ComplexMatrixX<double> m = synth_crosstalk(env.n_sense, env.crosstalk_level, env.seed);
        const auto sim =
            simulate_measurements(t, a_r, aut_orientations_deg, env.noise_sigma, m, env.seed);

        MeasurementSet set;
        set.frequency_hz = env.frequency_hz;
        set.sense_ids = sim.calibration.sense_ids;
        const std::array<std::array<double, 2>, 3> ref_angles = {{{0, 0}, {90, 0}, {90, 90}}};
        const char* ref_labels[3] = {"z", "x", "y"};
        for (int i = 0; i < 3; ++i)
        {
            MeasurementBlock b;
            b.label = ref_labels[i];
            b.orientation_deg = ref_angles[static_cast<std::size_t>(i)];
            b.voltages = sim.calibration.v_r.col(i);
            set.references.push_back(std::move(b));
        }
        for (std::size_t j = 0; j < aut_orientations_deg.size(); ++j)
        {
            MeasurementBlock b;
            std::ostringstream os;
            os << "aut" << (j + 1 < 10 ? "0" : "") << (j + 1);
            b.label = os.str();
            b.orientation_deg = aut_orientations_deg[j];
            b.voltages = sim.auts[j].v;
            set.auts.push_back(std::move(b));
        }
        if (env.crosstalk_level > 0.0)
            set.crosstalk = m;
        set.validate();
        return set;
    }

    CampaignResult run_campaign(const CampaignConfig& config,
                                const std::optional<ComplexMatrixX<double>>& preloaded_channel)
    {
        config.validate();
        const MeasurementSet set =
            simulate_environment(config.environment, config.aut_orientations_deg, preloaded_channel);

        AnalysisOptions options;
        options.methods = config.methods;
        options.subset_k = config.subset_k;
        options.strategy = config.strategy;

        CampaignResult result;
        result.config = config;
        result.report = estimate_report(set, options);
        return result;
    }

    StudyResult entropy_study(const CampaignConfig& config, std::uint64_t budget,
                              const std::optional<ComplexMatrixX<double>>& preloaded_channel)
    {
        config.validate();
        const MeasurementSet set =
            simulate_environment(config.environment, config.aut_orientations_deg, preloaded_channel);
        const auto constants = PhysicalConstantsD::from_frequency(config.environment.frequency_hz,
                                                                  config.environment.terminal_current_a);

        // same ingestion path as the estimators: correct crosstalk first
        ComplexMatrixX<double> v_cal(set.n_sense(), 3);
        for (int i = 0; i < 3; ++i)
            v_cal.col(i) = set.references[static_cast<std::size_t>(i)].voltages;
        std::vector<ComplexVectorX<double>> v_auts;
        for (const auto& block : set.auts)
            v_auts.push_back(block.voltages);
        if (set.crosstalk)
        {
            v_cal = correct_crosstalk(*set.crosstalk, v_cal);
            for (auto& v : v_auts)
                v = correct_crosstalk(*set.crosstalk, v);
        }

        std::vector<OrientationWeights<double>> w_true;
        for (const auto& o : config.aut_orientations_deg)
            w_true.push_back(dipole_weights(SphericalAngleD::from_degrees(o[0], o[1])));

        const Eigen::Index n = set.n_sense();
        const Eigen::Index k = config.subset_k;
        const std::uint64_t count = [&] {
            long double acc = 1.0L;
            for (Eigen::Index i = 1; i <= k; ++i)
                acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
            return static_cast<std::uint64_t>(acc + 0.5L);
        }();
        if (count > budget)
        {
            std::ostringstream os;
            os << "entropy_study: C(" << n << ", " << k << ") = " << count
               << " exceeds the enumeration budget " << budget;
            throw NumericalError(os.str());
        }

        StudyResult result;
        result.config = config;

        std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), Eigen::Index(0));
        bool more = true;
        while (more)
        {
            ComplexMatrixX<double> rows(k, 3);
            for (Eigen::Index i = 0; i < k; ++i)
                rows.row(i) = v_cal.row(idx[static_cast<std::size_t>(i)]);

            StudyRow row;
            row.indices = idx;
            row.h1 = one_entropy(rows);
            row.condition = condition_number(rows);

            double sum = 0.0;
            bool all_ok = true;
            for (std::size_t j = 0; j < v_auts.size(); ++j)
            {
                double rmse = std::numeric_limits<double>::quiet_NaN();
                try
                {
                    ComplexVectorX<double> v(k);
                    for (Eigen::Index i = 0; i < k; ++i)
                        v(i) = v_auts[j](idx[static_cast<std::size_t>(i)]);
                    const auto est = mi_estimate(rows, v);
                    rmse = reported_rmse_db(est.weights, w_true[j]);
                }
                catch (const NumericalError&)
                {
                    all_ok = false;
                }
                row.rmse_db.push_back(rmse);
                sum += rmse;
            }
            row.mean_rmse_db = all_ok ? sum / static_cast<double>(v_auts.size())
                                      : std::numeric_limits<double>::quiet_NaN();
            result.rows.push_back(std::move(row));

            more = false;
            for (Eigen::Index pos = k - 1; pos >= 0; --pos)
            {
                if (idx[static_cast<std::size_t>(pos)] < n - k + pos)
                {
                    ++idx[static_cast<std::size_t>(pos)];
                    for (Eigen::Index p = pos + 1; p < k; ++p)
                        idx[static_cast<std::size_t>(p)] = idx[static_cast<std::size_t>(p - 1)] + 1;
                    more = true;
                    break;
                }
            }
        }

        std::vector<double> h1s, rmses, logconds, h1s_for_cond;
        for (const auto& row : result.rows)
        {
            h1s.push_back(row.h1);
            rmses.push_back(row.mean_rmse_db);
            logconds.push_back(std::log10(row.condition));
            h1s_for_cond.push_back(row.h1);
        }
        result.spearman_h1_rmse = spearman_correlation(h1s, rmses);
        result.spearman_logcond_h1 = spearman_correlation(logconds, h1s_for_cond);
        return result;
    }

} // namespace mpem
