// Copyright 2026 The QuPUF-Sim Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "qupuf/device_model.hpp"
#include "qupuf/error.hpp"

using namespace qupuf;
using namespace qupuf::testing;

namespace {

// Exhaustive oracle: every injective guest->host map, filtered by edge preservation.
void brute_force(const DeviceFingerprint &host, const CouplingMap &guest, int guest_n, std::vector<int> &partial,
                 std::vector<Embedding> &out) {
    if (static_cast<int>(partial.size()) == guest_n) {
        std::set<Edge> host_edges(host.coupling_map.begin(), host.coupling_map.end());
        for (auto [a, b] : guest) {
            int x = partial[a], y = partial[b];
            if (x > y) std::swap(x, y);
            if (!host_edges.contains({x, y})) return;
        }
        out.push_back(partial);
        return;
    }
    for (int h = 0; h < host.n_qubits; ++h) {
        if (std::find(partial.begin(), partial.end(), h) != partial.end()) continue;
        partial.push_back(h);
        brute_force(host, guest, guest_n, partial, out);
        partial.pop_back();
    }
}

std::filesystem::path write_temp(const std::string &name, const std::string &content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

const char *kQubit =
    R"({"read01": 0.02, "read10": 0.05, "bias_deg": 0.5, "t1_us": 80, "drift_readout": 0.005, "drift_bias_deg": 0.1, "drift_t1_rel": 0.05})";

std::string device_json(const std::string &id, const std::string &qubit = kQubit) {
    std::string qs;
    for (int i = 0; i < 5; ++i) qs += (i ? "," : "") + qubit;
    return R"({"id": ")" + id +
           R"(", "n_qubits": 5, "coupling_map": [[0,1],[1,2],[1,3],[3,4]], "idle_gate_ns": 35.5, "seed": 7, "qubits": [)" +
           qs + "]}";
}

}  // namespace

TEST_CASE("load_registry reads three T-shaped devices") {
    auto path = write_temp("qupuf_reg3.json",
                           "[" + device_json("a") + "," + device_json("b") + "," + device_json("c") + "]");
    const auto reg = load_registry(path);
    CHECK(reg.size() == 3);
    CHECK(reg.at("b").coupling_map.size() == 4);
    CHECK(reg.at("a").qubits[2].t1 == 80.0);
    CHECK(reg.devices().front().device_id == "a");
}

TEST_CASE("load_registry rejects duplicate ids") {
    auto path = write_temp("qupuf_dup.json", "[" + device_json("a") + "," + device_json("a") + "]");
    CHECK_THROWS_WITH_AS(load_registry(path), doctest::Contains("duplicate id"), ValidationError);
}

TEST_CASE("load_registry names the offending field") {
    std::string bad = kQubit;
    bad.replace(bad.find("0.02"), 4, "1.5");
    auto path = write_temp("qupuf_bad.json", "[" + device_json("a", bad) + "]");
    CHECK_THROWS_WITH_AS(load_registry(path), doctest::Contains("read01"), ValidationError);
}

TEST_CASE("load_registry reports parse errors") {
    auto path = write_temp("qupuf_garbage.json", "[{");
    CHECK_THROWS_AS(load_registry(path), ParseError);
    auto missing = write_temp("qupuf_missing.json", R"([{"id": "x"}])");
    CHECK_THROWS_AS(load_registry(missing), ParseError);
    CHECK_THROWS_AS(load_registry("/nonexistent/qupuf.json"), ParseError);
}

TEST_CASE("validation catches structural errors") {
    auto d = ideal_t_device("x");
    SUBCASE("self loop") { d.coupling_map.emplace_back(2, 2); }
    SUBCASE("duplicate edge") { d.coupling_map.emplace_back(1, 0); }
    SUBCASE("edge out of range") { d.coupling_map.emplace_back(0, 5); }
    SUBCASE("qubit count") { d.qubits.pop_back(); }
    SUBCASE("t1") { d.qubits[3].t1 = 0.0; }
    SUBCASE("bias") { d.qubits[0].rotation_bias = 90.0; }
    SUBCASE("drift") { d.qubits[0].drift_sigma_bias = -1.0; }
    CHECK_THROWS_AS(d.validate(), ValidationError);
}

TEST_CASE("json round trip preserves a registry") {
    DeviceRegistry reg;
    auto d = ideal_t_device("x", 12345678901234ULL);
    d.qubits[1].read_flip_0to1 = 0.1 / 3.0;
    reg.add(d);
    const auto back = registry_from_json(nlohmann::json::parse(registry_to_json(reg).dump()));
    CHECK(back.at("x") == reg.at("x"));
}

TEST_CASE("sample_session with zero drift is the identity") {
    auto d = t_device("x", {quiet_qubit(0.03, 0.07, 1.25, 55.0), quiet_qubit(0.1, 0.2, -3.0, 20.0), quiet_qubit(),
                            quiet_qubit(0.0, 1.0, 0.0, 1.0), quiet_qubit(1.0, 0.0, 89.0, 300.0)});
    const auto s = sample_session(d, 17, 42);
    CHECK(s.session_index == 17);
    CHECK(s.qubits == d.qubits);
}

TEST_CASE("sample_session is deterministic and seed sensitive") {
    auto q = quiet_qubit(0.2, 0.2, 1.0, 50.0);
    q.drift_sigma_readout = 0.02;
    q.drift_sigma_bias = 0.5;
    q.drift_sigma_t1_rel = 0.1;
    auto d = t_device("x", std::vector<QubitParams>(5, q));
    CHECK(sample_session(d, 3, 9).qubits == sample_session(d, 3, 9).qubits);
    CHECK(sample_session(d, 3, 9).qubits != sample_session(d, 4, 9).qubits);
    CHECK(sample_session(d, 3, 9).qubits != sample_session(d, 3, 10).qubits);
    auto d2 = d;
    d2.base_seed = 2;
    CHECK(sample_session(d, 3, 9).qubits != sample_session(d2, 3, 9).qubits);
}

TEST_CASE("readout drift matches the configured Gaussian sigma") {
    auto q = quiet_qubit(0.2, 0.2, 0.0, 50.0);
    q.drift_sigma_readout = 0.01;
    auto d = t_device("x", std::vector<QubitParams>(5, q));
    const int n = 1000;
    double sum = 0.0, sum2 = 0.0;
    for (int s = 0; s < n; ++s) {
        const double v = sample_session(d, s, 2024).qubits[0].read_flip_0to1;
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sum2 - n * mean * mean) / (n - 1));
    CHECK(sd == doctest::Approx(0.01).epsilon(0.2));
    CHECK(mean == doctest::Approx(0.2).epsilon(0.01));
}

TEST_CASE("clamping keeps drifted parameters valid under extreme drift") {
    auto q = quiet_qubit(0.5, 0.5, 80.0, 10.0);
    q.drift_sigma_readout = 5.0;
    q.drift_sigma_bias = 100.0;
    q.drift_sigma_t1_rel = 10.0;
    auto d = t_device("x", std::vector<QubitParams>(5, q));
    for (int s = 0; s < 500; ++s) {
        for (const auto &e : sample_session(d, s, 1).qubits) {
            CHECK_NOTHROW(e.validate());
            CHECK(e.t1 >= 10.0 * kT1FloorFraction);
        }
    }
}

TEST_CASE("identity embedding is found for the device itself") {
    const auto d = ideal_t_device("x");
    const auto e = find_isomorphic_embeddings(d, d.coupling_map, d.n_qubits);
    REQUIRE(!e.empty());
    CHECK(e.front() == Embedding{0, 1, 2, 3, 4});
    CHECK(e.size() == 2);  // the T has one non-trivial automorphism (swap the two short arms)
}

TEST_CASE("T-shape embeddings into a tiled host agree with the exhaustive oracle") {
    const auto host = tiled_t_host("host", quiet_qubit());
    const auto guest = t_shape_coupling_map();
    const auto found = find_isomorphic_embeddings(host, guest, 5);

    std::vector<Embedding> oracle;
    std::vector<int> partial;
    brute_force(host, guest, 5, partial, oracle);
    std::sort(oracle.begin(), oracle.end());

    CHECK(found.size() >= 3);
    CHECK(found == oracle);
    CHECK(std::is_sorted(found.begin(), found.end()));
    std::set<Edge> host_edges(host.coupling_map.begin(), host.coupling_map.end());
    for (const auto &e : found) {
        CHECK(std::set<int>(e.begin(), e.end()).size() == e.size());
        for (auto [a, b] : guest) {
            CHECK(host_edges.contains({std::min(e[a], e[b]), std::max(e[a], e[b])}));
        }
    }
}

TEST_CASE("a triangle does not embed into a tree") {
    const auto host = tiled_t_host("host", quiet_qubit());
    CHECK(find_isomorphic_embeddings(host, {{0, 1}, {1, 2}, {0, 2}}, 3).empty());
    CHECK(find_isomorphic_embeddings(ideal_t_device("x"), line_coupling_map(6), 6).empty());
}

TEST_CASE("same_shape compares coupling maps up to relabelling") {
    auto a = ideal_t_device("a");
    auto b = ideal_t_device("b");
    b.coupling_map = normalize_coupling_map({{4, 3}, {3, 2}, {3, 1}, {1, 0}}, 5);
    CHECK(same_shape(a, b));
    auto line = ideal_t_device("l");
    line.coupling_map = line_coupling_map(5);
    CHECK_FALSE(same_shape(a, line));
}

TEST_CASE("unknown ids list the known ones") {
    DeviceRegistry reg({ideal_t_device("alpha"), ideal_t_device("beta")});
    CHECK_THROWS_WITH_AS(reg.at("gamma"), doctest::Contains("alpha, beta"), NotFoundError);
}
