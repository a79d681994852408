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

#include "imagres/io.hpp"

#include <cstring>

#include "gtest/gtest.h"

#include "imagres/gatesim.hpp"
#include "imagres/random.hpp"

using namespace imagres;
using io::json;

namespace {

bool bitwise_equal(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    return std::memcmp(a.data().data(), b.data().data(), a.data().size() * sizeof(cplx)) == 0;
}

}  // namespace

TEST(StateJson, RoundTripIsBitExact) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto rho = gen_random_density(1 + seed % 8, seed);
        const auto text = io::state_to_json(rho).dump();
        const auto back = io::state_from_json(json::parse(text));
        EXPECT_TRUE(bitwise_equal(back.matrix(), rho.matrix()));
        EXPECT_EQ(json::parse(text)["dim"], rho.dim());
    }
}

TEST(StateJson, PureForm) {
    const auto j = io::pure_to_json(plus_i());
    EXPECT_EQ(j["dim"], 2);
    EXPECT_EQ(j["amps_re"].size(), 2u);
    const auto rho = io::state_from_json(j);
    EXPECT_LE(max_abs_diff(rho.matrix(), from_pure(plus_i()).matrix()), 0.0);
    const auto psi = io::pure_from_json(j);
    EXPECT_EQ(psi.amplitudes(), plus_i().amplitudes());
    // "amps_im" is optional.
    EXPECT_NO_THROW((void)io::pure_from_json(json{{"dim", 1}, {"amps_re", {1.0}}}));
}

TEST(StateJson, ImaginaryPartIsOptional) {
    const json j = {{"dim", 2}, {"re", {{0.5, 0.0}, {0.0, 0.5}}}};
    EXPECT_EQ(io::state_from_json(j), maximally_mixed(2));
}

TEST(StateJson, ShapeErrorsAreParseErrors) {
    EXPECT_THROW((void)io::state_from_json(json::array()), io::ParseError);
    EXPECT_THROW((void)io::state_from_json(json{{"re", {{1.0}}}}), io::ParseError);
    EXPECT_THROW((void)io::state_from_json(json{{"dim", 2}, {"re", {{1.0, 0.0}}}}),
                 io::ParseError);
    EXPECT_THROW((void)io::state_from_json(json{{"dim", 1}, {"re", {{"a"}}}}), io::ParseError);
    EXPECT_THROW((void)io::state_from_json(json{{"dim", -1}, {"re", json::array()}}),
                 io::ParseError);
}

TEST(StateJson, PhysicalErrorsAreInvariantErrors) {
    const json trace2 = {{"dim", 2}, {"re", {{1.0, 0.0}, {0.0, 1.0}}}};
    EXPECT_THROW((void)io::state_from_json(trace2), InvariantError);
    const json unnormalized = {{"dim", 2}, {"amps_re", {1.0, 1.0}}};
    EXPECT_THROW((void)io::state_from_json(unnormalized), InvariantError);
}

TEST(MatrixJson, RoundTripRectangular) {
    Rng rng(3);
    const auto m = random_complex_gaussian(2, 5, rng);
    const auto back = io::matrix_from_json(json::parse(io::matrix_to_json(m).dump()));
    EXPECT_TRUE(bitwise_equal(back, m));
}

TEST(ReportJson, FieldsAndRoundTrip) {
    const auto r = classify(gen_random_density(3, 1));
    const auto j = io::report_to_json(r);
    for (const char *key : {"overlap_conj", "imag_trace_norm", "imag_fidelity", "robustness",
                            "verdict", "tolerance"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["verdict"], "zero");
    const auto back = io::report_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.overlapConj, r.overlapConj);
    EXPECT_EQ(back.imagTraceNorm, r.imagTraceNorm);
    EXPECT_EQ(back.imagFidelity, r.imagFidelity);
    EXPECT_EQ(back.robustness, r.robustness);
    EXPECT_EQ(back.verdict, r.verdict);
    EXPECT_THROW((void)io::report_from_json(json{{"verdict", "maybe"}}), io::ParseError);
}

TEST(KrausJson, RoundTripIsExact) {
    for (std::size_t d = 2; d <= 8; ++d) {
        const auto k = build_kraus(d);
        const auto back = io::kraus_from_json(json::parse(io::kraus_to_json(k).dump()));
        EXPECT_EQ(back, k);
    }
    const json incomplete = {{"in_dim", 2}, {"out_dim", 2}, {"operators", {{{1.0, 0.0}, {0.0, 0.0}}}}};
    EXPECT_THROW((void)io::kraus_from_json(incomplete), InvariantError);
}

TEST(DilationJson, RoundTrip) {
    for (std::size_t d : {2u, 3u, 5u, 8u}) {
        const auto dil = dilate(build_kraus(d));
        const auto j = json::parse(io::dilation_to_json(dil).dump());
        EXPECT_EQ(j["env_initial_index"], 0);
        const auto back = io::dilation_from_json(j);
        EXPECT_TRUE(bitwise_equal(back.unitary, dil.unitary));
        EXPECT_TRUE(bitwise_equal(back.isometry, dil.isometry));
        EXPECT_EQ(back.padDim, dil.padDim);
        EXPECT_EQ(back.envDim, dil.envDim);
    }
    EXPECT_THROW((void)io::dilation_from_json(json{{"in_dim", 2}, {"out_dim", 2}, {"env_dim", 1},
                                                   {"pad_dim", 0}}),
                 io::ParseError);
}

TEST(InstanceJson, RoundTripStillVerifies) {
    const auto inst = cs_gadget();
    const auto j = json::parse(io::instance_to_json(inst).dump());
    EXPECT_EQ(j["register_order"], json({"resource", "ancilla", "data"}));
    EXPECT_EQ(j["registers"]["data"], 4);
    const auto back = io::instance_from_json(j);
    EXPECT_TRUE(bitwise_equal(back.unitary, inst.unitary));
    EXPECT_TRUE(verify_instance(back, 1e-12).holds);
    EXPECT_THROW((void)io::instance_from_json(json::object()), io::ParseError);
}

TEST(VerificationJson, Fields) {
    const auto rep = verify_instance(s_gadget());
    const auto j = io::verification_to_json(rep, true);
    EXPECT_EQ(j["holds"], true);
    EXPECT_EQ(j["probe_count"], rep.probeCount);
    EXPECT_EQ(j["residual_uniform"], true);
    EXPECT_EQ(j["max_deviation"].get<double>(), rep.maxDeviation);
}

TEST(RigidityJson, NullsWhenNotRigid) {
    const auto j = io::rigidity_to_json(phase_rigidity(gates::S()));
    EXPECT_EQ(j["is_phase_multiple_of_identity"], false);
    EXPECT_TRUE(j["eta"].is_null());
    EXPECT_TRUE(j["realified"].is_null());
}

TEST(Files, MissingAndMalformed) {
    EXPECT_THROW((void)io::read_json_file("/nonexistent/x.json"), io::ParseError);
    const std::string path = testing::TempDir() + "imagres_bad.json";
    {
        std::ofstream f(path);
        f << "{ not json";
    }
    EXPECT_THROW((void)io::read_json_file(path), io::ParseError);
}
