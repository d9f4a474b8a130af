#pragma once

// JSON and TSV forms of the domain objects. All output is deterministic:
// fixed key order, fixed term order, no locale dependence.

#include <string>
#include <vector>

#include <json.hpp>

#include "specdec/characters.hpp"

namespace specdec {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const FinitePath& p) {
    return ordered_json{{"l", p.level()}, {"k", p.boundary()}, {"window", p.window()}};
}

inline ordered_json to_json(const SpinConfig& s) {
    return ordered_json{{"l", s.level()}, {"k", s.boundary()}, {"spins", s.window()}};
}

inline ordered_json to_json(const Spectrum& h) {
    return ordered_json{{"l", h.level()}, {"k", h.boundary()}, {"h", h.window()}};
}

inline ordered_json to_json(const SpectralKey& key) {
    return ordered_json{
        {"N", key.length()}, {"r", key.r.values()}, {"a", key.a.multiplicities()}};
}

/// { "delta_prefactor": [num, den], "terms": [{"z":..., "q":..., "c":...}] }
/// with terms sorted by z-exponent descending, then q ascending.
inline ordered_json to_json(const BivariateSeries& b) {
    ordered_json terms = ordered_json::array();
    const auto& m = b.terms();
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
        for (auto [qe, c] : it->second.terms()) {
            terms.push_back(ordered_json{{"z", it->first}, {"q", qe}, {"c", c}});
        }
    }
    return ordered_json{{"delta_prefactor", {b.delta().num, b.delta().den}},
                        {"terms", std::move(terms)}};
}

inline FinitePath path_from_json(const ordered_json& j) {
    return FinitePath(j.at("l").get<int>(), j.at("k").get<int>(),
                      j.at("window").get<std::vector<int>>());
}

inline SpinConfig spins_from_json(const ordered_json& j) {
    return SpinConfig(j.at("l").get<int>(), j.at("k").get<int>(),
                      j.at("spins").get<std::vector<int>>());
}

inline Spectrum spectrum_from_json(const ordered_json& j) {
    return Spectrum(j.at("l").get<int>(), j.at("k").get<int>(),
                    j.at("h").get<std::vector<int>>());
}

inline SpectralKey key_from_json(const ordered_json& j, int l) {
    RestrictedPath r(l, j.at("r").get<std::vector<int>>());
    YoungDiagram a(j.at("a").get<std::vector<int>>());
    if (j.contains("N") && j.at("N").get<int>() != r.length())
        throw std::invalid_argument("key JSON: N disagrees with r");
    return SpectralKey(std::move(r), std::move(a));
}

inline std::string join_ints(const std::vector<int>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace specdec
