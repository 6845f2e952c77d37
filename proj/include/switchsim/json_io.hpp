#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "switchsim/channels.hpp"
#include "switchsim/complex_matrix.hpp"
#include "switchsim/optimizer.hpp"
#include "switchsim/perm.hpp"
#include "switchsim/switch_bruteforce.hpp"
#include "switchsim/switch_output.hpp"

namespace switchsim {

// Wire formats:
//   complex number   [re, im]
//   matrix           [[ [re,im], ... ], ...]        (rows of entries)
//   permutation      [2, 3, 1]                       (1-indexed images)
//   channel          { "d": int, "kraus": [matrix, ...] }
//   switch spec      { "d": int, "channels": [...], "perms": [[...], ...],
//                      "control": matrix | "fourier" }
//   switch output    { "d": int, "M": int, "perms": [...],
//                      "blocks": [[matrix, ...], ...] }
//   ensemble         { "entries": [ { "p": real, "state": matrix }, ... ] }

using Json = nlohmann::ordered_json;

inline Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix json: expected a nonempty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (cols == 0) throw std::invalid_argument("matrix json: rows must be nonempty arrays");
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || row.size() != cols)
            throw std::invalid_argument("matrix json: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) {
            const Json& z = row.at(c);
            if (!z.is_array() || z.size() != 2)
                throw std::invalid_argument("matrix json: entries must be [re, im]");
            m(r, c) = Complex{z.at(0).get<double>(), z.at(1).get<double>()};
        }
    }
    return m;
}

inline Json perm_to_json(const Permutation& p) { return Json(p.images()); }

inline Permutation perm_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("permutation json: expected an array");
    return Permutation(j.get<std::vector<int>>());
}

inline Json perms_to_json(const std::vector<Permutation>& perms) {
    Json out = Json::array();
    for (const auto& p : perms) out.push_back(perm_to_json(p));
    return out;
}

inline std::vector<Permutation> perms_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("permutation list json: expected a nonempty array");
    std::vector<Permutation> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(perm_from_json(item));
    return out;
}

inline Json channel_to_json(const KrausChannel& ch) {
    Json kraus = Json::array();
    for (const auto& k : ch.kraus_ops()) kraus.push_back(matrix_to_json(k));
    return Json{{"d", ch.dim()}, {"kraus", std::move(kraus)}};
}

inline KrausChannel channel_from_json(const Json& j) {
    const int d = j.at("d").get<int>();
    std::vector<ComplexMatrix> ops;
    for (const auto& k : j.at("kraus")) ops.push_back(matrix_from_json(k));
    return KrausChannel(d, std::move(ops));
}

inline Json spec_to_json(const SwitchSpec& spec) {
    Json channels = Json::array();
    for (const auto& ch : spec.channels) channels.push_back(channel_to_json(ch));
    return Json{{"d", spec.d},
                {"channels", std::move(channels)},
                {"perms", perms_to_json(spec.perms)},
                {"control", matrix_to_json(spec.control.matrix())}};
}

inline SwitchSpec spec_from_json(const Json& j) {
    const int d = j.at("d").get<int>();
    std::vector<KrausChannel> channels;
    for (const auto& ch : j.at("channels")) channels.push_back(channel_from_json(ch));
    std::vector<Permutation> perms = perms_from_json(j.at("perms"));
    const Json& ctrl = j.at("control");
    DensityMatrix control = ctrl.is_string() && ctrl.get<std::string>() == "fourier"
                                ? fourier_control(static_cast<int>(perms.size()))
                                : DensityMatrix(matrix_from_json(ctrl));
    return SwitchSpec(d, std::move(channels), std::move(perms), std::move(control));
}

inline Json output_to_json(const SwitchOutput& out) {
    Json blocks = Json::array();
    for (int i = 0; i < out.control_dim; ++i) {
        Json row = Json::array();
        for (int j = 0; j < out.control_dim; ++j) row.push_back(matrix_to_json(out.block(i, j)));
        blocks.push_back(std::move(row));
    }
    return Json{{"d", out.d},
                {"M", out.control_dim},
                {"perms", perms_to_json(out.perms)},
                {"blocks", std::move(blocks)}};
}

inline Json ensemble_to_json(const Ensemble& e) {
    Json entries = Json::array();
    for (const auto& [p, state] : e.entries())
        entries.push_back(Json{{"p", p}, {"state", matrix_to_json(state.matrix())}});
    return Json{{"entries", std::move(entries)}};
}

inline Ensemble ensemble_from_json(const Json& j) {
    std::vector<Ensemble::Entry> entries;
    for (const auto& item : j.at("entries"))
        entries.emplace_back(item.at("p").get<double>(),
                             DensityMatrix(matrix_from_json(item.at("state"))));
    return Ensemble(std::move(entries));
}

inline Json score_to_json(const ProtocolScore& ps) {
    return Json{{"perms", perms_to_json(ps.perm_set)}, {"objective", ps.objective},
                {"n_id", ps.n_id},                     {"n_dp", ps.n_dp},
                {"e_id", ps.e_id},                     {"e_dp", ps.e_dp}};
}

inline Json search_result_to_json(const SearchResult& r) {
    Json maximizers = Json::array();
    for (const auto& ps : r.maximizers) maximizers.push_back(score_to_json(ps));
    return Json{{"N", r.n},
                {"M", r.m},
                {"d", r.d},
                {"maximizers", std::move(maximizers)},
                {"subsets_scanned", r.subsets_scanned}};
}

}  // namespace switchsim
