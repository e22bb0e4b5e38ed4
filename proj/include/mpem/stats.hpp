// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

namespace mpem
{

    // Midrank assignment: tied values share the average of the ranks they
    // would occupy. Infinities participate in the ordering; NaN must be
    // filtered by the caller.
    inline std::vector<double> midranks(const std::vector<double>& x)
    {
        const std::size_t n = x.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t(0));
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
        std::vector<double> rank(n, 0.0);
        std::size_t i = 0;
        while (i < n)
        {
            std::size_t j = i;
            while (j + 1 < n && x[order[j + 1]] == x[order[i]])
                ++j;
            const double r = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
            for (std::size_t t = i; t <= j; ++t)
                rank[order[t]] = r;
            i = j + 1;
        }
        return rank;
    }

    inline std::optional<double> pearson_correlation(const std::vector<double>& x,
                                                     const std::vector<double>& y)
    {
        const std::size_t n = x.size();
        if (n != y.size() || n < 2)
            return std::nullopt;
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            mx += x[i];
            my += y[i];
        }
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double dx = x[i] - mx;
            const double dy = y[i] - my;
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
        if (sxx <= 0.0 || syy <= 0.0)
            return std::nullopt; // constant input: correlation undefined
        return sxy / std::sqrt(sxx * syy);
    }

    // Spearman rank correlation with average-tie ranks. Pairs containing a
    // NaN are dropped; returns nullopt when either column is constant or
    // fewer than two pairs remain.
    inline std::optional<double> spearman_correlation(const std::vector<double>& x,
                                                      const std::vector<double>& y)
    {
        if (x.size() != y.size())
            return std::nullopt;
        std::vector<double> xs, ys;
        xs.reserve(x.size());
        ys.reserve(y.size());
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            if (std::isnan(x[i]) || std::isnan(y[i]))
                continue;
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
        if (xs.size() < 2)
            return std::nullopt;
        return pearson_correlation(midranks(xs), midranks(ys));
    }

} // namespace mpem
