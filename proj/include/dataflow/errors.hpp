#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dataflow {

// Invalid configuration or parameters.  Collects one message per violation so a
// caller can report everything wrong with a config at once.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::string message)
        : std::runtime_error(message), issues_{std::move(message)} {}

    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out;
        for (const auto& s : issues) {
            if (!out.empty()) out += "\n";
            out += s;
        }
        return out.empty() ? std::string("invalid configuration") : out;
    }

    std::vector<std::string> issues_;
};

// Runtime failure of a simulation (NaN state, positivity loss, ...).
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dataflow
