#pragma once

#include <string>
#include <vector>

#include "forge/evaluation.hpp"
#include "forge/params.hpp"

namespace forge {

struct MethodInfo {
    std::string name;
    std::string summary;
    std::string defaults;  // "key=default ..." as shown in help text
    bool multiclass = false;
};

const std::vector<MethodInfo>& registered_methods();

// Builds the resampler for `name`, validating parameter keys and values up
// front. Defaults that depend on the data (for instance CCR energy = 0.25 * m)
// are resolved when the resampler runs. Binary methods emit majority rows
// first, then minority rows; they reject data with other than two classes.
Resampler make_resampler(const std::string& name, const ParamMap& params);

}  // namespace forge
