/*  Copyright 2026 The sparse-recovery Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.  */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace recovery
{
    enum class ErrorKind
    {
        contract_violation,
        numerical_failure,
        infeasible,
        degenerate_input,
        too_large,
        io
    };

    inline std::string_view to_string(ErrorKind kind)
    {
        switch (kind) {
            case ErrorKind::contract_violation: return "contract_violation";
            case ErrorKind::numerical_failure:  return "numerical_failure";
            case ErrorKind::infeasible:         return "infeasible";
            case ErrorKind::degenerate_input:   return "degenerate_input";
            case ErrorKind::too_large:          return "too_large";
            case ErrorKind::io:                 return "io";
        }
        return "unknown";
    }

    /// Every failure raised by the library carries one of the kinds above.
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string& what)
            : std::runtime_error(std::string(to_string(kind)) + ": " + what)
            , kind_(kind)
        {}

        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
    };

    inline void require(bool condition, const std::string& what)
    {
        if (!condition) {
            throw Error(ErrorKind::contract_violation, what);
        }
    }
}
