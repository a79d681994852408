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
 * The `imagres` command line. Lives in a header so the test suites can drive
 * it in-process with string streams.
 *
 * Exit codes: 0 success, 1 internal error, 2 parse/usage error,
 * 3 invariant violation, 4 zero-resource refusal.
 */

#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "imagres/gatesim.hpp"
#include "imagres/io.hpp"
#include "imagres/measures.hpp"
#include "imagres/realops.hpp"
#include "imagres/states.hpp"

namespace imagres::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kParse = 2,
    kInvariant = 3,
    kZeroResource = 4,
};

struct RunConfig {
    std::string command;
    std::vector<std::string> inputPaths;
    std::uint64_t seed = 0;
    double tolerance = kUniversalityTol;
    std::size_t dimension = 2;
    std::size_t rank = 1;
    std::string outputPath;  ///< empty: standard output

    // command-specific
    std::string genKind;
    std::vector<double> bloch;
    std::string gadget;
    std::string resourcePath;
};

namespace detail {

using io::json;

// Loads a state, translating failures into exit codes. Returns kOk on success.
inline int load_state(const std::string &path, std::istream &stdin_stream,
                      std::optional<DensityMatrix> &out, std::ostream &err) {
    try {
        json j;
        if (path == "-") {
            j = json::parse(stdin_stream);
        } else {
            j = io::read_json_file(path);
        }
        out.emplace(io::state_from_json(j));
        return kOk;
    } catch (const io::ParseError &e) {
        err << "error: " << path << ": " << e.what() << "\n";
        return kParse;
    } catch (const json::exception &e) {
        err << "error: " << path << ": " << e.what() << "\n";
        return kParse;
    } catch (const DimensionError &e) {
        err << "error: " << path << ": " << e.what() << "\n";
        return kParse;
    } catch (const InvariantError &e) {
        err << "error: " << path << ": invalid state: " << e.what() << "\n";
        return kInvariant;
    }
}

inline json dilation_summary(const RealDilation &dil, const DensityMatrix &rho,
                             const Conversion &conv) {
    const DensityMatrix aligned(conv.align * rho.matrix() * transpose(conv.align));
    const double channel_residual =
        max_abs_diff(dil.apply(aligned).matrix(), conv.output.matrix());
    return {{"env_dim", dil.envDim},
            {"pad_dim", dil.padDim},
            {"total_dim", dil.unitary.rows()},
            {"orthogonality_residual", dil.orthogonality_residual()},
            {"channel_residual", channel_residual}};
}

inline int cmd_classify(const RunConfig &cfg, std::istream &in, std::ostream &out,
                        std::ostream &err) {
    int code = kOk;
    auto emit = [&](const DensityMatrix &rho, const std::string &source) {
        json j = io::report_to_json(classify(rho, cfg.tolerance));
        j["source"] = source;
        out << j.dump() << "\n";
    };
    for (const auto &path : cfg.inputPaths) {
        if (path == "-") {
            // JSON-lines stream of states on stdin.
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                if (line.find_first_not_of(" \t\r") == std::string::npos) {
                    continue;
                }
                std::istringstream ls(line);
                std::optional<DensityMatrix> rho;
                const int c = load_state("-", ls, rho, err);
                if (c != kOk) {
                    err << "  (stdin line " << lineno << ")\n";
                    code = code == kOk ? c : code;
                    continue;
                }
                emit(*rho, "-:" + std::to_string(lineno));
            }
            continue;
        }
        std::optional<DensityMatrix> rho;
        const int c = load_state(path, in, rho, err);
        if (c != kOk) {
            code = code == kOk ? c : code;
            continue;
        }
        emit(*rho, path);
    }
    return code;
}

inline int cmd_measure(const RunConfig &cfg, std::istream &in, std::ostream &out,
                       std::ostream &err) {
    int code = kOk;
    for (const auto &path : cfg.inputPaths) {
        std::optional<DensityMatrix> rho;
        const int c = load_state(path, in, rho, err);
        if (c != kOk) {
            code = code == kOk ? c : code;
            continue;
        }
        json j = io::report_to_json(classify(*rho, cfg.tolerance));
        j["source"] = path;
        j["dim"] = rho->dim();
        j["eigenvalues"] = hermitian_eig(rho->matrix()).values;
        if (rho->dim() == 2) {
            const auto b = bloch_of(*rho);
            j["bloch"] = {b.x, b.y, b.z};
            j["bloch_verdict"] = std::string(to_string(classify_bloch(b, cfg.tolerance)));
        }
        out << j.dump() << "\n";
    }
    return code;
}

inline int cmd_convert(const RunConfig &cfg, std::istream &in, std::ostream &out,
                       std::ostream &err) {
    std::optional<DensityMatrix> rho;
    if (const int c = load_state(cfg.inputPaths.at(0), in, rho, err); c != kOk) {
        return c;
    }
    const auto conv = convert_to_plus_hat(*rho);
    const auto dil = dilate(conv.kraus);
    json j = {{"fidelity", conv.fidelity},
              {"optimal_fidelity", imaginarity_fidelity(*rho)},
              {"output", io::state_to_json(conv.output)},
              {"kraus", io::kraus_to_json(conv.kraus)},
              {"align", io::real_rows(conv.align)},
              {"dilation", dilation_summary(dil, *rho, conv)}};
    out << j.dump(2) << "\n";
    return kOk;
}

inline int cmd_simulate(const RunConfig &cfg, std::istream &in, std::ostream &out,
                        std::ostream &err) {
    DensityMatrix catalyst = from_pure(plus_i());
    json source = "default |+i>";
    if (!cfg.resourcePath.empty()) {
        std::optional<DensityMatrix> rho;
        if (const int c = load_state(cfg.resourcePath, in, rho, err); c != kOk) {
            return c;
        }
        const auto report = classify(*rho, cfg.tolerance);
        if (report.verdict == Verdict::Zero) {
            json j = {{"gadget", cfg.gadget},
                      {"refused", true},
                      {"reason", "zero resource"},
                      {"classification", io::report_to_json(report)},
                      {"best_fidelity", report.imagFidelity}};
            out << j.dump(2) << "\n";
            err << "error: " << cfg.resourcePath
                << " is a zero resource; it can only simulate real orthogonal gates\n";
            return kZeroResource;
        }
        catalyst = convert_to_plus_hat(*rho).output;
        source = cfg.resourcePath;
    }
    const auto inst = cfg.gadget == "cs" ? cs_gadget(catalyst) : s_gadget(catalyst);
    const auto rep = verify_instance(inst, 1e-12, 50, cfg.seed);
    const bool uniform = residual_independence_check(rep);
    const auto hs = hs_consistency(inst, 50, cfg.seed);

    json j = io::verification_to_json(rep, uniform);
    j["gadget"] = cfg.gadget;
    j["resource_source"] = source;
    j["residual"] = io::state_to_json(rep.residuals.front());
    j["residual_matches_catalyst"] =
        max_abs_diff(rep.residuals.front().matrix(), catalyst.matrix()) <= 1e-12;
    j["hs_consistency"] = {{"lhs", hs.lhs}, {"rhs_values", hs.rhsValues}, {"holds", hs.holds}};
    out << j.dump(2) << "\n";
    return kOk;
}

inline int cmd_gen(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    try {
        std::optional<DensityMatrix> rho;
        if (cfg.genKind == "random") {
            rho.emplace(gen_random_density(cfg.dimension, cfg.seed));
        } else if (cfg.genKind == "max-imaginary") {
            rho.emplace(gen_max_imaginary(cfg.dimension, cfg.rank, cfg.seed));
        } else {
            if (cfg.bloch.size() != 3) {
                err << "error: gen bloch needs three coordinates x y z\n";
                return kParse;
            }
            rho.emplace(state_of(BlochVector(cfg.bloch[0], cfg.bloch[1], cfg.bloch[2])));
        }
        out << io::state_to_json(*rho).dump(2) << "\n";
        return kOk;
    } catch (const InvariantError &e) {
        err << "error: invalid parameters: " << e.what() << "\n";
        return kInvariant;
    }
}

inline int cmd_rigidity(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    ComplexMatrix v;
    try {
        v = io::matrix_from_json(io::read_json_file(cfg.inputPaths.at(0)));
    } catch (const io::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    } catch (const io::json::exception &e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    } catch (const DimensionError &e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    }
    try {
        const auto r = phase_rigidity(v, cfg.tolerance);
        out << io::rigidity_to_json(r).dump(2) << "\n";
        return kOk;
    } catch (const InvariantError &e) {
        err << "error: " << e.what() << "\n";
        return kInvariant;
    }
}

}  // namespace detail

/// Entry point shared by the binary and the tests.
inline int run(std::vector<std::string> args, std::istream &in, std::ostream &out,
               std::ostream &err) {
    CLI::App app{"imagres: imaginarity resources for universality transformations"};
    app.name("imagres");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--tolerance", cfg.tolerance,
                   "universality threshold on tr[rho rho*] (rigidity: entrywise tolerance)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for every stochastic step (default 0)");
    app.add_option("--out", cfg.outputPath, "write output to this file instead of stdout");

    auto *classify_cmd = app.add_subcommand("classify", "classify states as universal or zero resources");
    classify_cmd->add_option("paths", cfg.inputPaths, "state files ('-' reads JSON lines from stdin)")
        ->required();

    auto *measure_cmd = app.add_subcommand("measure", "report imaginarity measures");
    measure_cmd->add_option("paths", cfg.inputPaths, "state files")->required();

    auto *convert_cmd = app.add_subcommand("convert", "optimal real conversion towards |+i>");
    convert_cmd->add_option("path", cfg.inputPaths, "state file")->required()->expected(1);

    auto *simulate_cmd = app.add_subcommand("simulate", "build and verify a gate gadget");
    simulate_cmd->add_option("gadget", cfg.gadget, "s or cs")
        ->required()
        ->check(CLI::IsMember({"s", "cs"}));
    simulate_cmd->add_option("--resource", cfg.resourcePath, "resource state file");

    auto *gen_cmd = app.add_subcommand("gen", "generate a state file");
    gen_cmd->add_option("kind", cfg.genKind, "random | max-imaginary | bloch")
        ->required()
        ->check(CLI::IsMember({"random", "max-imaginary", "bloch"}));
    gen_cmd->add_option("coords", cfg.bloch, "x y z (bloch only)");
    gen_cmd->add_option("--dim", cfg.dimension, "dimension")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--rank", cfg.rank, "rank (max-imaginary)");

    auto *rigidity_cmd = app.add_subcommand("rigidity", "test V^T V = e^{i eta} I");
    rigidity_cmd->add_option("path", cfg.inputPaths, "matrix file")->required()->expected(1);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    }
    std::ostringstream buffer;
    int code = kInternal;
    try {
        if (classify_cmd->parsed()) {
            code = detail::cmd_classify(cfg, in, buffer, err);
        } else if (measure_cmd->parsed()) {
            code = detail::cmd_measure(cfg, in, buffer, err);
        } else if (convert_cmd->parsed()) {
            code = detail::cmd_convert(cfg, in, buffer, err);
        } else if (simulate_cmd->parsed()) {
            code = detail::cmd_simulate(cfg, in, buffer, err);
        } else if (gen_cmd->parsed()) {
            code = detail::cmd_gen(cfg, buffer, err);
        } else if (rigidity_cmd->parsed()) {
            if (app.count("--tolerance") == 0) {
                cfg.tolerance = kDefaultTol;
            }
            code = detail::cmd_rigidity(cfg, buffer, err);
        }
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }

    if (cfg.outputPath.empty()) {
        out << buffer.str();
    } else {
        std::ofstream f(cfg.outputPath, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << cfg.outputPath << "\n";
            return kInternal;
        }
        f << buffer.str();
    }
    return code;
}

inline int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
               std::ostream &err) {
    return run(std::vector<std::string>(argv + 1, argv + argc), in, out, err);
}

}  // namespace imagres::cli
