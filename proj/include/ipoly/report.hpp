#ifndef IPOLY_REPORT_HPP
#define IPOLY_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ipoly/cf.hpp"

namespace ipoly {

using Json = nlohmann::ordered_json;

/// Machine-readable run report. All numeric payloads are decimal strings
/// (never binary floats), so serialization round-trips byte-identically.
struct RunReport {
    Json inputs = Json::object();
    Json stages = Json::object();
    const ConvergentTable* table = nullptr;
    std::string theta;                       // decimal string, empty if n/a
    std::optional<std::string> oracle_theta;
    std::optional<int> agreement_digits;
    double elapsed_seconds = 0.0;
    std::optional<Json> verdict;             // nr runs only

    Json to_json() const;
    std::string render_text() const;
};

/// Matching significant decimal digits of two decimal strings (compared as
/// reals at a precision covering both).
int agreement_digit_count(const Real& a, const Real& b);

std::string format_elapsed(double seconds);

}  // namespace ipoly

#endif  // IPOLY_REPORT_HPP
