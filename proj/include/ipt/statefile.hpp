#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ipt/errors.hpp"
#include "ipt/tensor.hpp"
#include "ipt/version.hpp"

namespace ipt {

// Provenance carried inside a state file.
struct StateFileMeta {
    std::string creator;  // the command line (or API call) that produced the state
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::string tool_version = kVersion;
};

// JSON persistence for dense tensors, format "invariant-tensor-state" v1.
// Only entries with amplitude != 0 are stored (as index tuple plus real and
// imaginary parts). Doubles are rendered as the shortest decimal string
// that parses back to the same binary64, so decode(encode(s)) == s bitwise.
inline std::string encode_state(const DenseTensor& psi, const StateFileMeta& meta = {}) {
    nlohmann::json records = nlohmann::json::array();
    std::vector<int> idx(static_cast<std::size_t>(psi.parties()), 0);
    for (std::size_t flat = 0; flat < psi.size(); ++flat) {
        const Complex z = psi.amps[flat];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ArgumentError("state has a non-finite amplitude; refusing to encode");
        if (z != Complex(0, 0)) {
            nlohmann::json rec;
            rec["idx"] = idx;
            rec["re"] = z.real();
            rec["im"] = z.imag();
            records.push_back(std::move(rec));
        }
        for (int k = psi.parties() - 1; k >= 0; --k) {
            if (++idx[static_cast<std::size_t>(k)] < psi.dims[static_cast<std::size_t>(k)]) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
    }

    const double norm = psi.norm();
    nlohmann::json j;
    j["format"] = "invariant-tensor-state";
    j["version"] = 1;
    j["n"] = psi.parties();
    j["dims"] = psi.dims;
    j["norm"] = norm;
    j["normalized"] = std::abs(norm - 1.0) <= 1e-10;
    j["amplitudes"] = std::move(records);
    nlohmann::json m;
    m["creator"] = meta.creator;
    m["tool_version"] = meta.tool_version;
    if (meta.has_seed) m["seed"] = meta.seed;
    j["meta"] = std::move(m);
    return j.dump(2) + "\n";
}

struct DecodedState {
    DenseTensor state;
    StateFileMeta meta;
    double declared_norm = 0;
    bool normalized = false;
};

// Inverse of encode_state with layered validation: malformed JSON is a
// parse error; wrong shape or types a schema error; out-of-range or
// duplicate indices an index-range error; a declared norm that disagrees
// with the recomputed one by more than 1e-10 a norm-mismatch error.
inline DecodedState decode_state_full(const std::string& bytes) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("state file is not valid JSON: ") + e.what());
    }

    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key)) throw SchemaError(std::string("state file lacks the '") + key + "' field");
        return j.at(key);
    };
    if (!need("format").is_string() || j["format"].get<std::string>() != "invariant-tensor-state")
        throw SchemaError("unrecognized state file format tag");
    if (!need("version").is_number_integer() || j["version"].get<int>() != 1)
        throw SchemaError("unsupported state file version");
    if (!need("n").is_number_integer()) throw SchemaError("'n' must be an integer");
    if (!need("dims").is_array()) throw SchemaError("'dims' must be an array");
    if (!need("norm").is_number()) throw SchemaError("'norm' must be a number");
    if (!need("amplitudes").is_array()) throw SchemaError("'amplitudes' must be an array");

    const int n = j["n"].get<int>();
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw SchemaError("'dims' entries must be positive integers");
        dims.push_back(d.get<int>());
    }
    if (static_cast<int>(dims.size()) != n)
        throw SchemaError("'n' does not match the number of dimensions");

    DecodedState out;
    out.state = DenseTensor::zeros(dims);
    std::vector<bool> seen(out.state.size(), false);
    for (const auto& rec : j["amplitudes"]) {
        if (!rec.is_object() || !rec.contains("idx") || !rec.contains("re") || !rec.contains("im"))
            throw SchemaError("each amplitude record needs 'idx', 're', and 'im'");
        if (!rec["idx"].is_array() || !rec["re"].is_number() || !rec["im"].is_number())
            throw SchemaError("amplitude record fields have the wrong types");
        if (static_cast<int>(rec["idx"].size()) != n)
            throw IndexRangeError("amplitude index tuple length differs from the party count");
        std::vector<int> idx;
        for (std::size_t k = 0; k < rec["idx"].size(); ++k) {
            const auto& e = rec["idx"][k];
            if (!e.is_number_integer()) throw SchemaError("amplitude indices must be integers");
            const int v = e.get<int>();
            if (v < 0 || v >= dims[k])
                throw IndexRangeError("amplitude index " + std::to_string(v) +
                                      " outside dimension " + std::to_string(dims[k]) +
                                      " at position " + std::to_string(k));
            idx.push_back(v);
        }
        const std::size_t flat = out.state.ravel(idx);
        if (seen[flat]) throw IndexRangeError("duplicate amplitude record for one index tuple");
        seen[flat] = true;
        out.state.amps[flat] = Complex(rec["re"].get<double>(), rec["im"].get<double>());
    }

    out.declared_norm = j["norm"].get<double>();
    if (std::abs(out.state.norm() - out.declared_norm) > 1e-10)
        throw NormMismatchError("declared norm " + std::to_string(out.declared_norm) +
                                " does not match the recomputed norm " +
                                std::to_string(out.state.norm()));
    out.normalized = j.value("normalized", std::abs(out.declared_norm - 1.0) <= 1e-10);

    if (j.contains("meta") && j["meta"].is_object()) {
        const auto& m = j["meta"];
        out.meta.creator = m.value("creator", std::string());
        out.meta.tool_version = m.value("tool_version", std::string());
        if (m.contains("seed") && m["seed"].is_number_unsigned()) {
            out.meta.has_seed = true;
            out.meta.seed = m["seed"].get<std::uint64_t>();
        }
    }
    return out;
}

inline DenseTensor decode_state(const std::string& bytes) { return decode_state_full(bytes).state; }

}  // namespace ipt
