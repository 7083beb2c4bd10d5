#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "schurp/process.hpp"

namespace schurp {

/// Reads a ProcessSpec from the shared JSON document:
///   { "N": int, "alphabets": [["p/q", ...], ...], "mu": [int, ...] }
/// Rationals are "p/q" strings (or bare integers). Exactly 4N alphabets.
inline ProcessSpec process_spec_from_json(const nlohmann::json& j) {
    if (!j.contains("N") || !j["N"].is_number_integer())
        throw std::invalid_argument("spec JSON: missing or non-integer field \"N\"");
    const long N = j["N"].get<long>();
    if (!j.contains("alphabets") || !j["alphabets"].is_array())
        throw std::invalid_argument("spec JSON: missing array field \"alphabets\"");
    if (!j.contains("mu") || !j["mu"].is_array())
        throw std::invalid_argument("spec JSON: missing array field \"mu\"");

    std::vector<Alphabet> alphabets;
    for (const auto& entry : j["alphabets"]) {
        if (!entry.is_array())
            throw std::invalid_argument("spec JSON: \"alphabets\" entries must be arrays");
        std::vector<Rat> vars;
        for (const auto& v : entry) {
            if (!v.is_string())
                throw std::invalid_argument(
                    "spec JSON: alphabet entries must be rational strings \"p/q\"");
            vars.push_back(parse_rat(v.get<std::string>()));
        }
        try {
            alphabets.emplace_back(std::move(vars));
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string("spec JSON: \"alphabets\": ") + e.what());
        }
    }

    std::vector<long> parts;
    for (const auto& v : j["mu"]) {
        if (!v.is_number_integer())
            throw std::invalid_argument("spec JSON: \"mu\" entries must be integers");
        parts.push_back(v.get<long>());
    }
    Partition mu;
    try {
        mu = Partition(std::move(parts));
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("spec JSON: \"mu\": ") + e.what());
    }
    return ProcessSpec(N, std::move(alphabets), std::move(mu));
}

inline ProcessSpec load_process_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("spec JSON parse error: ") + e.what());
    }
    return process_spec_from_json(j);
}

}  // namespace schurp
