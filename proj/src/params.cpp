#include "forge/params.hpp"

#include <cmath>
#include <stdexcept>

namespace forge {

ParamMap ParamMap::parse(const std::vector<std::string>& tokens) {
    std::map<std::string, std::string> values;
    for (const auto& token : tokens) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("parameter '" + token + "' is not of the form key=value");
        }
        const std::string key = token.substr(0, eq);
        if (!values.emplace(key, token.substr(eq + 1)).second) {
            throw std::invalid_argument("parameter '" + key + "' given more than once");
        }
    }
    return ParamMap(std::move(values));
}

double ParamMap::number(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used == it->second.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("parameter '" + key + "': expected a number, got '" + it->second + "'");
}

std::size_t ParamMap::count(const std::string& key, std::size_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& s = it->second;
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
        try {
            return static_cast<std::size_t>(std::stoull(s));
        } catch (const std::exception&) {
        }
    }
    throw std::invalid_argument("parameter '" + key + "': expected a non-negative integer, got '" + s + "'");
}

std::string ParamMap::text(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

Norm ParamMap::norm(const std::string& key, const Norm& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return Norm::parse(it->second);
    } catch (const std::exception& e) {
        throw std::invalid_argument("parameter '" + key + "': " + e.what());
    }
}

void ParamMap::check_known(const std::set<std::string>& known, const std::string& context) const {
    for (const auto& [key, value] : values_) {
        if (known.count(key)) continue;
        std::string accepted;
        for (const auto& k : known) accepted += (accepted.empty() ? "" : ", ") + k;
        throw std::invalid_argument(context + ": unknown parameter '" + key + "' (accepted: " +
                                    (accepted.empty() ? "none" : accepted) + ")");
    }
}

}  // namespace forge
