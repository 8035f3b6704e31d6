// params.hpp
// Named parameter lists attached to results.

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "primelab/arith.hpp"

namespace primelab {

using ParamValue = std::variant<i64, double, std::string>;
using Params = std::vector<std::pair<std::string, ParamValue>>;

inline const ParamValue* find_param(const Params& params, const std::string& name) {
    for (const auto& [k, v] : params)
        if (k == name) return &v;
    return nullptr;
}

}  // namespace primelab
