// SPDX-License-Identifier: Apache-2.0
//
// mpem: multipath-enhanced antenna pattern measurement toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mpem
{

    // Ill-conditioned or degenerate numerics: singular matrices, exceeded
    // enumeration budgets, failed constraints. CLI exit code 3.
    class NumericalError : public std::runtime_error
    {
    public:
        explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
    };

    // Malformed files, unknown keys, wrong-length vectors. CLI exit code 2.
    class SchemaError : public std::runtime_error
    {
    public:
        explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
    };

} // namespace mpem
