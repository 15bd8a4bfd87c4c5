#include "ipoly/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace ipoly {

std::string format_elapsed(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", seconds);
    return buf;
}

Json RunReport::to_json() const {
    Json j;
    j["inputs"] = inputs;
    j["stages"] = stages;
    Json conv = Json::array();
    if (table) {
        for (const auto& row : table->rows) {
            Json r;
            r["j"] = row.j;
            r["q"] = row.q.str();
            if (row.provisional) {
                r["provisional"] = true;
            } else {
                r["a"] = row.a.str();
                r["p"] = row.p.str();
            }
            conv.push_back(r);
        }
    }
    j["convergents"] = conv;
    j["theta"] = theta;
    j["oracle_theta"] = oracle_theta ? Json(*oracle_theta) : Json(nullptr);
    j["agreement_digits"] = agreement_digits ? Json(*agreement_digits) : Json(nullptr);
    j["elapsed_seconds"] = format_elapsed(elapsed_seconds);
    if (verdict) j["verdict"] = *verdict;
    return j;
}

std::string RunReport::render_text() const {
    std::ostringstream os;
    os << "inputs:";
    for (auto it = inputs.begin(); it != inputs.end(); ++it)
        os << " " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump());
    os << "\n";
    if (!stages.empty()) {
        os << "stages:";
        for (auto it = stages.begin(); it != stages.end(); ++it)
            os << " " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump());
        os << "\n";
    }
    if (table && !table->rows.empty()) {
        std::size_t qw = 1, aw = 1, pw = 1;
        for (const auto& row : table->rows) {
            qw = (std::max)(qw, row.q.str().size());
            if (!row.provisional) {
                aw = (std::max)(aw, row.a.str().size());
                pw = (std::max)(pw, row.p.str().size());
            }
        }
        os << std::setw(4) << "j" << "  " << std::setw(static_cast<int>(qw)) << "q" << "  "
           << std::setw(static_cast<int>(aw)) << "a" << "  " << std::setw(static_cast<int>(pw))
           << "p" << "\n";
        for (const auto& row : table->rows) {
            if (row.provisional) {
                os << std::setw(4) << "?" << "  " << std::setw(static_cast<int>(qw))
                   << row.q.str() << "  (provisional)\n";
                continue;
            }
            os << std::setw(4) << row.j << "  " << std::setw(static_cast<int>(qw)) << row.q.str()
               << "  " << std::setw(static_cast<int>(aw)) << row.a.str() << "  "
               << std::setw(static_cast<int>(pw)) << row.p.str() << "\n";
        }
    }
    if (!theta.empty()) os << "theta = " << theta << "\n";
    if (oracle_theta) os << "oracle = " << *oracle_theta << "\n";
    if (agreement_digits) os << "agreement_digits = " << *agreement_digits << "\n";
    if (verdict) os << "verdict: " << verdict->dump() << "\n";
    os << "elapsed_seconds = " << format_elapsed(elapsed_seconds) << "\n";
    return os.str();
}

int agreement_digit_count(const Real& a, const Real& b) {
    if (a == b) return static_cast<int>(Real::default_precision());
    const Real scale = (std::max)(abs(a), abs(b));
    if (scale == 0) return static_cast<int>(Real::default_precision());
    const Real rel = abs(a - b) / scale;
    if (rel >= 1) return 0;
    const long digits = lround(floor(-log10(rel)).convert_to<double>());
    return static_cast<int>((std::max)(0L, digits));
}

}  // namespace ipoly
