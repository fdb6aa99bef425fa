#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "qsteer/canonical.hpp"
#include "qsteer/state.hpp"

namespace qsteer {

using json = nlohmann::json;

/// 17 significant digits; round-trips any double exactly.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using StateFile = std::variant<PureState, DensityMatrix>;

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(std::string("state file: expected [re, im] pair in ") + where);
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json state_to_json(const PureState& psi) {
    json amps = json::array();
    for (int i = 0; i < psi.dim(); ++i) amps.push_back(complex_to_json(psi.amplitude(i)));
    return {{"kind", "pure"}, {"num_qubits", psi.num_qubits()}, {"amplitudes", amps}};
}

inline json state_to_json(const DensityMatrix& rho) {
    json rows = json::array();
    for (int r = 0; r < rho.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < rho.dim(); ++c) row.push_back(complex_to_json(rho.entry(r, c)));
        rows.push_back(row);
    }
    return {{"kind", "mixed"}, {"num_qubits", rho.num_qubits()}, {"entries", rows}};
}

inline StateFile state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("state file: missing \"kind\"");
    if (!j.contains("num_qubits") || !j["num_qubits"].is_number_integer())
        throw ParseError("state file: missing integer \"num_qubits\"");
    const int nq = j["num_qubits"].get<int>();
    if (nq < 1 || nq > 3) throw ParseError("state file: num_qubits must be 1..3");
    const int dim = 1 << nq;
    const std::string kind = j["kind"].get<std::string>();

    if (kind == "pure") {
        if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
            throw ParseError("state file: pure state needs \"amplitudes\"");
        const json& amps = j["amplitudes"];
        if (static_cast<int>(amps.size()) != dim)
            throw ParseError("state file: amplitude count does not match 2^num_qubits");
        std::vector<cplx> a;
        a.reserve(static_cast<std::size_t>(dim));
        for (const auto& e : amps) a.push_back(complex_from_json(e, "amplitudes"));
        try {
            return PureState::from_amplitudes(nq, a);
        } catch (const ArgumentError& e) {
            throw ParseError(std::string("state file: ") + e.what());
        }
    }
    if (kind == "mixed") {
        if (!j.contains("entries") || !j["entries"].is_array())
            throw ParseError("state file: mixed state needs \"entries\"");
        const json& rows = j["entries"];
        if (static_cast<int>(rows.size()) != dim)
            throw ParseError("state file: row count does not match 2^num_qubits");
        CMat m(dim);
        for (int r = 0; r < dim; ++r) {
            if (!rows[static_cast<std::size_t>(r)].is_array() ||
                static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != dim)
                throw ParseError("state file: entries rows must have 2^num_qubits columns");
            for (int c = 0; c < dim; ++c)
                m(r, c) = complex_from_json(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                                            "entries");
        }
        return DensityMatrix::from_matrix(nq, m);
    }
    throw ParseError("state file: kind must be \"pure\" or \"mixed\"");
}

inline StateFile read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return state_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

inline json unitary_to_json(const CMat& u) {
    json rows = json::array();
    for (int r = 0; r < u.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < u.dim(); ++c) row.push_back(complex_to_json(u(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline json canonical_to_json(const CanonicalCoefficients& c) {
    return {{"lambda", {c.lambda[0], c.lambda[1], c.lambda[2], c.lambda[3], c.lambda[4]}},
            {"phi", c.phi},
            {"unitaries", {unitary_to_json(c.u_a), unitary_to_json(c.u_b), unitary_to_json(c.u_c)}}};
}

inline json verdict_to_json(const CollusionVerdict& v) {
    json criteria = json::array();
    for (const auto& ce : v.criteria)
        criteria.push_back({{"name", ce.name}, {"lhs", ce.lhs}, {"rhs", ce.rhs}, {"holds", ce.holds}});
    json out = {{"scenario", scenario_name(v.scenario)},
                {"applicable", v.applicable},
                {"tradeoff_broken", v.tradeoff_broken},
                {"all_pairs_violate", v.all_pairs_violate},
                {"criteria", criteria}};
    if (v.applicable)
        out["pair_violates"] = {{"AB", v.pair_violates[0]},
                                {"AC", v.pair_violates[1]},
                                {"BC", v.pair_violates[2]}};
    if (v.ab_ac_attribution_ambiguous) out["ab_ac_attribution_ambiguous"] = true;
    return out;
}

} // namespace qsteer
