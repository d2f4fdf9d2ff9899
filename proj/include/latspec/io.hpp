#pragma once

#include <charconv>
#include <ostream>
#include <string>

#include <json.hpp>

#include "latspec/classify.hpp"
#include "latspec/eigvec.hpp"
#include "latspec/oracle.hpp"
#include "latspec/params.hpp"
#include "latspec/spectrum.hpp"
#include "latspec/sweep.hpp"

namespace latspec {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline void to_json(nlohmann::json& j, const PhysicalParams& p) {
    j = {{"lambda", p.lambda}, {"lambda1", p.lambda1}, {"mu", p.mu}, {"mu1", p.mu1}};
}

inline void to_json(nlohmann::json& j, const NormalizedParams& n) {
    j = {{"alpha", n.alpha}, {"delta", n.delta}, {"sigma", n.sigma},
         {"c1", n.c1}, {"c2", n.c2}};
}

inline void to_json(nlohmann::json& j, const Region& r) {
    j = {{"tag", to_string(r.tag)},
         {"case", to_string(r.label)},
         {"expected_count", expected_eigenvalue_count(r)}};
}

// field names are frozen; downstream scripts parse them
inline void to_json(nlohmann::json& j, const EigenvalueRecord& r) {
    j = {{"nu", r.nu},
         {"gamma", r.gamma},
         {"origin", to_string(r.origin)},
         {"parity", to_string(r.parity)},
         {"multiplicity", r.multiplicity},
         {"embedded", r.embedded}};
    if (r.bracket)
        j["bracket"] = {r.bracket->lo, r.bracket->hi};
    else
        j["bracket"] = nullptr;
}

namespace oracle {

inline void to_json(nlohmann::json& j, const OracleReport& rep) {
    j = nlohmann::json::object();
    j["half_width"] = rep.half_width;
    j["essential_band"] = {rep.band_lo, rep.band_hi};
    j["count_below_band"] = rep.count_below_band;
    j["count_above_band"] = rep.count_above_band;
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.bound_eigs.size(); ++i)
        arr.push_back({{"value", rep.bound_eigs[i].value},
                       {"gap", rep.bound_eigs[i].gap},
                       {"residual", rep.residuals[i]}});
    j["bound_eigs"] = arr;
}

}  // namespace oracle

/// CSV conventions shared by every command: comma separators, one header
/// row, LF line endings, round-trip double formatting.
inline void write_csv_eigenvector(std::ostream& os, const EigenvectorTable& t) {
    os << "k,f_k\n";
    for (int k = -t.half_width; k <= t.half_width; ++k)
        os << k << ',' << format_double(t.value_at(k)) << '\n';
}

inline void write_csv_records(std::ostream& os, const std::vector<EigenvalueRecord>& recs) {
    os << "nu,gamma,origin,parity,multiplicity,bracket_lo,bracket_hi,embedded\n";
    for (const auto& r : recs) {
        os << format_double(r.nu) << ',' << format_double(r.gamma) << ','
           << to_string(r.origin) << ',' << to_string(r.parity) << ','
           << r.multiplicity << ',';
        if (r.bracket)
            os << format_double(r.bracket->lo) << ',' << format_double(r.bracket->hi);
        else
            os << ',';
        os << ',' << (r.embedded ? "true" : "false") << '\n';
    }
}

inline void write_csv_raster(std::ostream& os, const std::vector<RasterCell>& cells) {
    os << "delta,sigma,region,case,count\n";
    for (const auto& c : cells)
        os << format_double(c.delta) << ',' << format_double(c.sigma) << ','
           << to_string(c.tag) << ',' << to_string(c.label) << ',' << c.count << '\n';
}

}  // namespace latspec
