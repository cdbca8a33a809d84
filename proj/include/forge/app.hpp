#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace forge {

struct RunConfig {
    std::string command;  // resample | evaluate | grid | synth
    std::string input;
    std::string output;
    std::string method;   // resampler for resample/evaluate, generator for synth
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    std::size_t folds = 5;
    std::size_t repeats = 1;
    bool standardize = false;
    std::string label_column;
    std::size_t neighbors = 5;  // k of the evaluation classifier
};

// Serialized config as embedded in every artifact. The output path is left
// out so an artifact can be regenerated elsewhere.
std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(const std::string& text);

// Recovers the config from an artifact written by run().
RunConfig config_from_artifact(const std::string& path);

// Executes one command. Errors go to `err` with a nonzero return; the output
// file is written atomically, so a failed run leaves nothing behind.
int run(const RunConfig& config, std::ostream& err);

}  // namespace forge
