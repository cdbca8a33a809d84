#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "forge/dataset.hpp"

namespace forge {

// String key=value parameters with typed accessors. Every accessor records
// the key as known; check_known rejects anything left over.
class ParamMap {
public:
    ParamMap() = default;
    explicit ParamMap(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    // Parses "k=v" tokens; a repeated key is an error.
    static ParamMap parse(const std::vector<std::string>& tokens);

    const std::map<std::string, std::string>& values() const { return values_; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    double number(const std::string& key, double fallback) const;
    std::size_t count(const std::string& key, std::size_t fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    Norm norm(const std::string& key, const Norm& fallback) const;

    void check_known(const std::set<std::string>& known, const std::string& context) const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace forge
