// Copyright 2026 The imagres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * JSON encodings of states, matrices, Kraus sets, dilations, simulation
 * instances and reports. The grammar is documented in docs/FORMATS.md.
 *
 * Doubles are written in shortest round-trip form, so decode(encode(x)) is
 * bit-exact.
 */

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "imagres/gatesim.hpp"
#include "imagres/linalg.hpp"
#include "imagres/measures.hpp"
#include "imagres/realops.hpp"
#include "imagres/states.hpp"

namespace imagres::io {

using json = nlohmann::json;

/// Malformed document: bad JSON, missing fields, wrong shapes.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Matrices

inline json real_rows(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j).real());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json imag_rows(const ComplexMatrix &m) {
    return real_rows(imag_part(m));
}

/// {"rows", "cols", "re", "im"}.
inline json matrix_to_json(const ComplexMatrix &m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", real_rows(m)}, {"im", imag_rows(m)}};
}

namespace detail {

inline std::size_t get_count(const json &j, const char *key) {
    if (!j.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    const auto &v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

inline std::vector<double> read_row(const json &row, std::size_t cols, const char *what) {
    if (!row.is_array() || row.size() != cols) {
        throw ParseError(std::string(what) + ": expected a row of " + std::to_string(cols) +
                         " numbers");
    }
    std::vector<double> out;
    out.reserve(cols);
    for (const auto &x : row) {
        if (!x.is_number()) {
            throw ParseError(std::string(what) + ": non-numeric entry");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

inline std::vector<std::vector<double>> read_grid(const json &j, const char *key,
                                                  std::size_t rows, std::size_t cols) {
    if (!j.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    const auto &g = j.at(key);
    if (!g.is_array() || g.size() != rows) {
        throw ParseError(std::string("field \"") + key + "\" must have " +
                         std::to_string(rows) + " rows");
    }
    std::vector<std::vector<double>> out;
    for (const auto &row : g) {
        out.push_back(read_row(row, cols, key));
    }
    return out;
}

}  // namespace detail

/// Accepts {"rows", "cols", "re", "im"} or the square form {"dim", "re", "im"};
/// "im" may be omitted for real matrices.
inline ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_object()) {
        throw ParseError("matrix: expected a JSON object");
    }
    std::size_t rows = 0;
    std::size_t cols = 0;
    if (j.contains("dim")) {
        rows = cols = detail::get_count(j, "dim");
    } else {
        rows = detail::get_count(j, "rows");
        cols = detail::get_count(j, "cols");
    }
    const auto re = detail::read_grid(j, "re", rows, cols);
    std::vector<std::vector<double>> im;
    if (j.contains("im")) {
        im = detail::read_grid(j, "im", rows, cols);
    }
    std::vector<cplx> data;
    data.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            data.emplace_back(re[r][c], im.empty() ? 0.0 : im[r][c]);
        }
    }
    return ComplexMatrix(rows, cols, std::move(data));
}

/// Real matrix as a bare array of rows.
inline ComplexMatrix real_matrix_from_rows(const json &j) {
    if (!j.is_array() || j.empty() || !j.front().is_array()) {
        throw ParseError("real matrix: expected an array of rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().size();
    std::vector<cplx> data;
    for (const auto &row : j) {
        for (double x : detail::read_row(row, cols, "real matrix")) {
            data.emplace_back(x, 0.0);
        }
    }
    return ComplexMatrix(rows, cols, std::move(data));
}

// ---------------------------------------------------------------------------
// States

/// {"dim", "re", "im"}.
inline json state_to_json(const DensityMatrix &rho) {
    return {{"dim", rho.dim()},
            {"re", real_rows(rho.matrix())},
            {"im", imag_rows(rho.matrix())}};
}

/// {"dim", "amps_re", "amps_im"}.
inline json pure_to_json(const PureState &psi) {
    json re = json::array();
    json im = json::array();
    for (const auto &z : psi.amplitudes()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return {{"dim", psi.dim()}, {"amps_re", re}, {"amps_im", im}};
}

inline PureState pure_from_json(const json &j) {
    const std::size_t dim = detail::get_count(j, "dim");
    if (!j.contains("amps_re")) {
        throw ParseError("pure state: missing field \"amps_re\"");
    }
    const auto re = detail::read_row(j.at("amps_re"), dim, "amps_re");
    const auto im = j.contains("amps_im") ? detail::read_row(j.at("amps_im"), dim, "amps_im")
                                          : std::vector<double>(dim, 0.0);
    std::vector<cplx> amps(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        amps[i] = {re[i], im[i]};
    }
    return PureState(std::move(amps));
}

/**
 * Density matrix from either the mixed form {"dim", "re", "im"} or the pure
 * form {"dim", "amps_re", "amps_im"}. Shape problems raise ParseError;
 * physical problems (trace, positivity, ...) raise InvariantError.
 */
inline DensityMatrix state_from_json(const json &j) {
    if (!j.is_object()) {
        throw ParseError("state: expected a JSON object");
    }
    if (j.contains("amps_re")) {
        return from_pure(pure_from_json(j));
    }
    if (!j.contains("dim")) {
        throw ParseError("state: missing field \"dim\"");
    }
    return DensityMatrix(matrix_from_json(j));
}

// ---------------------------------------------------------------------------
// Reports

inline json report_to_json(const ClassificationReport &r) {
    return {{"overlap_conj", r.overlapConj},
            {"imag_trace_norm", r.imagTraceNorm},
            {"imag_fidelity", r.imagFidelity},
            {"robustness", r.robustness},
            {"verdict", std::string(to_string(r.verdict))},
            {"tolerance", r.tolerance}};
}

inline ClassificationReport report_from_json(const json &j) {
    ClassificationReport r;
    try {
        r.overlapConj = j.at("overlap_conj").get<double>();
        r.imagTraceNorm = j.at("imag_trace_norm").get<double>();
        r.imagFidelity = j.at("imag_fidelity").get<double>();
        r.robustness = j.at("robustness").get<double>();
        r.tolerance = j.at("tolerance").get<double>();
        const auto v = j.at("verdict").get<std::string>();
        if (v != "universal" && v != "zero") {
            throw ParseError("report: unknown verdict \"" + v + "\"");
        }
        r.verdict = v == "universal" ? Verdict::Universal : Verdict::Zero;
    } catch (const json::exception &e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    return r;
}

inline json verification_to_json(const VerificationReport &rep, bool residual_uniform) {
    return {{"holds", rep.holds},
            {"max_deviation", rep.maxDeviation},
            {"probe_count", rep.probeCount},
            {"residual_uniform", residual_uniform}};
}

inline json rigidity_to_json(const PhaseRigidityResult &r) {
    json j = {{"is_phase_multiple_of_identity", r.isPhaseMultipleOfIdentity},
              {"gram", matrix_to_json(r.gram)},
              {"realified_is_real", r.realifiedIsReal}};
    j["eta"] = r.isPhaseMultipleOfIdentity ? json(r.eta) : json(nullptr);
    j["realified"] = r.realified ? matrix_to_json(*r.realified) : json(nullptr);
    return j;
}

// ---------------------------------------------------------------------------
// Kraus sets and dilations

inline json kraus_to_json(const RealKrausSet &k) {
    json ops = json::array();
    for (const auto &op : k.operators()) {
        ops.push_back(real_rows(op));
    }
    return {{"in_dim", k.in_dim()}, {"out_dim", k.out_dim()}, {"operators", ops}};
}

inline RealKrausSet kraus_from_json(const json &j) {
    const std::size_t in = detail::get_count(j, "in_dim");
    const std::size_t out = detail::get_count(j, "out_dim");
    if (!j.contains("operators") || !j.at("operators").is_array()) {
        throw ParseError("kraus: missing \"operators\" array");
    }
    std::vector<ComplexMatrix> ops;
    for (const auto &o : j.at("operators")) {
        ops.push_back(real_matrix_from_rows(o));
    }
    return RealKrausSet(in, out, std::move(ops));
}

inline json dilation_to_json(const RealDilation &d) {
    return {{"in_dim", d.inDim},
            {"out_dim", d.outDim},
            {"env_dim", d.envDim},
            {"pad_dim", d.padDim},
            {"env_initial_index", 0},
            {"isometry", real_rows(d.isometry)},
            {"unitary", real_rows(d.unitary)}};
}

inline RealDilation dilation_from_json(const json &j) {
    RealDilation d;
    d.inDim = detail::get_count(j, "in_dim");
    d.outDim = detail::get_count(j, "out_dim");
    d.envDim = detail::get_count(j, "env_dim");
    d.padDim = detail::get_count(j, "pad_dim");
    if (!j.contains("isometry") || !j.contains("unitary")) {
        throw ParseError("dilation: missing \"isometry\" or \"unitary\"");
    }
    d.isometry = real_matrix_from_rows(j.at("isometry"));
    d.unitary = real_matrix_from_rows(j.at("unitary"));
    if (d.unitary.rows() != d.outDim * d.envDim || d.isometry.cols() != d.inDim) {
        throw ParseError("dilation: matrix shapes disagree with the declared dimensions");
    }
    return d;
}

// ---------------------------------------------------------------------------
// Simulation instances

inline json instance_to_json(const SimulationInstance &inst) {
    return {{"register_order", {"resource", "ancilla", "data"}},
            {"registers",
             {{"resource", inst.resource.dim()},
              {"ancilla", inst.ancillaDim},
              {"data", inst.data_dim()}}},
            {"ancilla_input_index", 0},
            {"unitary", matrix_to_json(inst.unitary)},
            {"resource", state_to_json(inst.resource)},
            {"target", matrix_to_json(inst.target)},
            {"residual", state_to_json(inst.residual)},
            {"out_ancilla", pure_to_json(inst.outAncilla)}};
}

inline SimulationInstance instance_from_json(const json &j) {
    try {
        const std::size_t anc = j.at("registers").at("ancilla").get<std::size_t>();
        return SimulationInstance(matrix_from_json(j.at("unitary")),
                                  state_from_json(j.at("resource")), anc,
                                  matrix_from_json(j.at("target")),
                                  state_from_json(j.at("residual")),
                                  pure_from_json(j.at("out_ancilla")));
    } catch (const json::exception &e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Files

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace imagres::io
