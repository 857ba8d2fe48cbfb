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

// qupuf: device generation, challenge execution, sweeps, enrollment,
// authentication and scheduler-attack experiments.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qupuf/auth.hpp"
#include "qupuf/circuits.hpp"
#include "qupuf/cloud_sim.hpp"
#include "qupuf/device_model.hpp"
#include "qupuf/error.hpp"
#include "qupuf/metrics.hpp"
#include "qupuf/rng.hpp"
#include "qupuf/signature.hpp"

namespace {

using namespace qupuf;

constexpr int kExitRejected = 2;

struct RunConfig {
    std::string registry;
    std::string device;
    std::string devices;
    std::string variant = "hadamard";
    std::string theta = "3";
    std::string idles = "0";
    std::string bits = "5";
    std::optional<int> shots;
    std::optional<int> experiments;
    bool resilient = false;
    std::uint64_t seed = 0;
    std::string out;
    std::string db;
    std::string response;
    std::string policy = "honest";
    int trials = 200;
    bool overwrite = false;
    // gen-devices
    int count = 3;
    std::string templ = "t_shape";
    int line_qubits = 5;
    std::string coupling;
    // sweep
    std::string designated;
    std::string pair;
};

template <typename T>
T parse_number(const std::string &text, const char *what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(std::string("bad ") + what + " '" + text + "'");
    }
    return value;
}

/// "start:end:step", "start:end" (step 1) or a single value. End is included when reached.
template <typename T>
std::vector<T> parse_range(const std::string &text, const char *what) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.empty() || parts.size() > 3) {
        throw ParseError(std::string("bad ") + what + " range '" + text + "'");
    }
    const T start = parse_number<T>(parts[0], what);
    if (parts.size() == 1) {
        return {start};
    }
    const T end = parse_number<T>(parts[1], what);
    const T step = parts.size() == 3 ? parse_number<T>(parts[2], what) : T{1};
    if (!(step > T{0}) || end < start) {
        throw ParseError(std::string("bad ") + what + " range '" + text + "' (need start <= end and step > 0)");
    }
    std::vector<T> values;
    for (long i = 0;; ++i) {
        const T v = static_cast<T>(start + static_cast<T>(i) * step);
        // Tolerate floating accumulation at the end point.
        if (static_cast<double>(v) > static_cast<double>(end) + 1e-9 * std::max(1.0, static_cast<double>(end))) {
            break;
        }
        values.push_back(v);
    }
    return values;
}

QuPUFChallenge challenge_from(const RunConfig &cfg) {
    QuPUFChallenge c;
    c.variant = parse_variant(cfg.variant);
    c.theta = parse_number<double>(cfg.theta, "theta");
    c.idle_count = parse_number<int>(cfg.idles, "idle count");
    c.shots = cfg.resilient ? 1024 : 8192;
    c.n_experiments = cfg.resilient ? 20 : 75;
    if (cfg.shots) c.shots = *cfg.shots;
    if (cfg.experiments) c.n_experiments = *cfg.experiments;
    c.validate();
    return c;
}

void write_output(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << content;
}

std::string dump(const nlohmann::json &j) { return j.dump(2) + "\n"; }

nlohmann::json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

int cmd_gen_devices(const RunConfig &cfg) {
    CouplingMap map;
    int n_qubits = 0;
    if (cfg.templ == "t_shape") {
        map = t_shape_coupling_map();
        n_qubits = 5;
    } else if (cfg.templ == "line") {
        n_qubits = cfg.line_qubits;
        map = line_coupling_map(n_qubits);
    } else if (cfg.templ == "custom") {
        if (cfg.coupling.empty()) {
            throw ParseError("--template custom needs --coupling FILE");
        }
        const auto j = read_json(cfg.coupling);
        n_qubits = j.at("n_qubits").get<int>();
        for (const auto &e : j.at("coupling_map")) {
            map.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
        map = normalize_coupling_map(std::move(map), n_qubits);
    } else {
        throw ParseError("unknown template '" + cfg.templ + "' (expected t_shape, line or custom)");
    }

    // Default parameter ranges: read01 U[0.01, 0.06], read10 U[0.02, 0.10], bias U[-1.5, 1.5] deg,
    // T1 U[40, 120] us, drift 0.005 / 0.2 deg / 5% relative, 35.5 ns idle gates.
    DeviceRegistry registry;
    for (int i = 0; i < cfg.count; ++i) {
        Rng rng(derive_seed({cfg.seed, static_cast<std::uint64_t>(i)}));
        DeviceFingerprint d;
        d.device_id = "qpu_" + std::to_string(i);
        d.n_qubits = n_qubits;
        d.coupling_map = map;
        d.idle_gate_duration = 35.5;
        d.base_seed = rng();
        for (int q = 0; q < n_qubits; ++q) {
            QubitParams p;
            p.read_flip_0to1 = 0.01 + 0.05 * rng.uniform();
            p.read_flip_1to0 = 0.02 + 0.08 * rng.uniform();
            p.rotation_bias = -1.5 + 3.0 * rng.uniform();
            p.t1 = 40.0 + 80.0 * rng.uniform();
            p.drift_sigma_readout = 0.005;
            p.drift_sigma_bias = 0.2;
            p.drift_sigma_t1_rel = 0.05;
            d.qubits.push_back(p);
        }
        registry.add(std::move(d));
    }
    write_output(cfg.out, dump(registry_to_json(registry)));
    return 0;
}

int cmd_run(const RunConfig &cfg) {
    const auto registry = load_registry(cfg.registry);
    const auto &device = registry.at(cfg.device);
    const auto trace = execute_challenge(device, challenge_from(cfg), cfg.seed);
    write_output(cfg.out, dump(trace));
    return 0;
}

std::pair<int, int> parse_pair(const std::string &text, const std::vector<std::string> &ids) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ParseError("--pair expects ID_A,ID_B");
    }
    auto index_of = [&](const std::string &id) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i] == id) return static_cast<int>(i);
        }
        throw NotFoundError("device '" + id + "' is not part of the sweep");
    };
    int a = index_of(text.substr(0, comma));
    int b = index_of(text.substr(comma + 1));
    if (a > b) std::swap(a, b);
    return {a, b};
}

int cmd_sweep(const RunConfig &cfg) {
    const auto registry = load_registry(cfg.registry);
    std::vector<DeviceFingerprint> devices;
    if (cfg.devices.empty()) {
        devices = registry.devices();
    } else {
        std::stringstream ss(cfg.devices);
        std::string id;
        while (std::getline(ss, id, ',')) {
            devices.push_back(registry.at(id));
        }
    }
    std::vector<std::string> ids;
    for (const auto &d : devices) ids.push_back(d.device_id);

    const QuPUFChallenge base = [&] {
        RunConfig c = cfg;
        c.theta = "0";
        c.idles = "0";
        return challenge_from(c);
    }();
    SweepConfig sc;
    sc.variant = parse_variant(cfg.variant);
    sc.theta_values = parse_range<double>(cfg.theta, "theta");
    sc.precisions = parse_range<int>(cfg.bits, "bits");
    sc.idle_values = parse_range<int>(cfg.idles, "idle count");
    sc.shots = base.shots;
    sc.n_experiments = base.n_experiments;
    sc.seed = cfg.seed;
    if (!cfg.designated.empty()) {
        sc.designated_device = -1;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i] == cfg.designated) sc.designated_device = static_cast<int>(i);
        }
        if (sc.designated_device < 0) throw NotFoundError("designated device '" + cfg.designated + "' not in sweep");
    }
    if (!cfg.pair.empty()) {
        sc.designated_pair = parse_pair(cfg.pair, ids);
    }
    const auto result = sweep(devices, sc);
    write_output(cfg.out, result.to_csv());
    const auto best = select_optimum(result);
    std::cerr << "optimum: theta=" << best.theta << " bits=" << best.precision << " idles=" << best.idle_count
              << " combined=" << best.combined << "%\n";
    return 0;
}

int cmd_register(const RunConfig &cfg) {
    const auto registry = load_registry(cfg.registry);
    const std::string out = cfg.out.empty() ? cfg.db : cfg.out;
    if (out.empty()) {
        throw ParseError("register needs --db or --out");
    }
    CRPDatabase db;
    const bool db_exists = !cfg.db.empty() && std::filesystem::exists(cfg.db);
    if (db_exists) {
        db = CRPDatabase::load(cfg.db);
        if (out == cfg.db && !cfg.overwrite) {
            throw ValidationError("refusing to modify existing database '" + cfg.db +
                                  "' without --overwrite (or write elsewhere with --out)");
        }
    }
    const auto challenge = challenge_from(cfg);
    const int precision = parse_number<int>(cfg.bits, "bits");
    std::vector<DeviceFingerprint> devices;
    if (cfg.device.empty()) {
        devices = registry.devices();
    } else {
        devices.push_back(registry.at(cfg.device));
    }
    for (std::size_t i = 0; i < devices.size(); ++i) {
        db.register_device(devices[i], challenge, precision, derive_seed({cfg.seed, i}), cfg.overwrite);
    }
    write_output(out, dump(db.to_json()));
    return 0;
}

int cmd_authenticate(const RunConfig &cfg) {
    const auto db = CRPDatabase::load(cfg.db);
    const auto trace = read_json(cfg.response).get<ResponseTrace>();
    if (trace.sessions.empty()) {
        throw ValidationError("response trace has no sessions");
    }
    const int precision = parse_number<int>(cfg.bits, "bits");
    const auto key = make_challenge_key(trace.challenge, precision);
    const auto response = digitize(trace.sessions.back().prob_one, precision);
    const AuthDecision decision =
        cfg.device.empty() ? db.identify(response, key) : db.verify(cfg.device, response, key);
    nlohmann::json j = decision;
    j["mode"] = cfg.device.empty() ? "identify" : "verify";
    j["challenge_key"] = to_string(key);
    write_output(cfg.out, dump(j));
    return decision.outcome == AuthOutcome::Accepted ? 0 : kExitRejected;
}

int cmd_attack(const RunConfig &cfg) {
    const auto registry = load_registry(cfg.registry);
    const auto db = CRPDatabase::load(cfg.db);
    const auto policy = SchedulerPolicy::parse(cfg.policy);
    QuPUFChallenge c;
    c.variant = parse_variant(cfg.variant);
    c.theta = parse_number<double>(cfg.theta, "theta");
    c.idle_count = parse_number<int>(cfg.idles, "idle count");
    const auto key = make_challenge_key(c, parse_number<int>(cfg.bits, "bits"));
    const auto report = run_detection_experiment(registry, db, cfg.device, policy, key, cfg.trials, cfg.seed);
    write_output(cfg.out, dump(report));
    std::cerr << report.summary() << '\n';
    return 0;
}

void add_challenge_flags(CLI::App *sub, RunConfig &cfg, bool ranges) {
    sub->add_option("--variant", cfg.variant, "hadamard | decoherence")->check(CLI::IsMember({"hadamard", "decoherence"}));
    sub->add_option("--theta", cfg.theta, ranges ? "R_Y angle range start:end:step (degrees)" : "R_Y angle (degrees)");
    sub->add_option("--idles", cfg.idles, ranges ? "idle-gate count range" : "idle-gate count (decoherence)");
    sub->add_option("--shots", cfg.shots, "shots per experiment")->check(CLI::PositiveNumber);
    sub->add_option("--experiments", cfg.experiments, "experiments (sessions)")->check(CLI::PositiveNumber);
    sub->add_flag("--resilient", cfg.resilient, "20 experiments x 1024 shots instead of 75 x 8192");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"QuPUF simulator: fingerprint noisy quantum devices and authenticate them"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto *gen = app.add_subcommand("gen-devices", "write a device file");
    gen->add_option("--n", cfg.count, "number of devices")->check(CLI::PositiveNumber);
    gen->add_option("--template", cfg.templ, "t_shape | line | custom");
    gen->add_option("--line-qubits", cfg.line_qubits, "qubits for the line template")->check(CLI::PositiveNumber);
    gen->add_option("--coupling", cfg.coupling, "JSON {n_qubits, coupling_map} for the custom template");
    gen->add_option("--seed", cfg.seed, "RNG seed")->required();
    gen->add_option("--out", cfg.out, "output path (default stdout)");

    auto *run = app.add_subcommand("run", "execute one challenge and write the ResponseTrace JSON");
    run->add_option("--registry", cfg.registry)->required();
    run->add_option("--device", cfg.device)->required();
    add_challenge_flags(run, cfg, false);
    run->add_option("--seed", cfg.seed)->required();
    run->add_option("--out", cfg.out);

    auto *sw = app.add_subcommand("sweep", "sweep angle/precision/idles and write CSV");
    sw->add_option("--registry", cfg.registry)->required();
    sw->add_option("--devices", cfg.devices, "comma-separated ids (default: all)");
    add_challenge_flags(sw, cfg, true);
    sw->add_option("--bits", cfg.bits, "precision range, e.g. 4:9");
    sw->add_option("--designated", cfg.designated, "device whose intra-HD enters the combined metric");
    sw->add_option("--pair", cfg.pair, "ID_A,ID_B whose inter-HD enters the combined metric");
    sw->add_option("--seed", cfg.seed)->required();
    sw->add_option("--out", cfg.out);

    auto *reg = app.add_subcommand("register", "enroll devices into a CRP database");
    reg->add_option("--registry", cfg.registry)->required();
    reg->add_option("--device", cfg.device, "device id (default: all)");
    add_challenge_flags(reg, cfg, false);
    reg->add_option("--bits", cfg.bits, "signature precision");
    reg->add_option("--db", cfg.db, "existing database to extend");
    reg->add_option("--out", cfg.out, "output database (default: --db)");
    reg->add_flag("--overwrite", cfg.overwrite, "replace existing records and allow rewriting --db");
    reg->add_option("--seed", cfg.seed)->required();

    auto *auth = app.add_subcommand("authenticate", "identify or verify a response (exit 2 unless accepted)");
    auth->add_option("--db", cfg.db)->required();
    auth->add_option("--response", cfg.response, "ResponseTrace JSON; its last session is used")->required();
    auth->add_option("--device", cfg.device, "claimed id (verify); omit to identify");
    auth->add_option("--bits", cfg.bits, "signature precision");
    auth->add_option("--out", cfg.out);

    auto *atk = app.add_subcommand("attack", "run a scheduler detection experiment");
    atk->add_option("--registry", cfg.registry)->required();
    atk->add_option("--db", cfg.db)->required();
    atk->add_option("--device", cfg.device, "requested device")->required();
    atk->add_option("--policy", cfg.policy, "honest | reroute:ID | subgraph:ID:FACTOR");
    atk->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
    atk->add_option("--variant", cfg.variant)->check(CLI::IsMember({"hadamard", "decoherence"}));
    atk->add_option("--theta", cfg.theta);
    atk->add_option("--idles", cfg.idles);
    atk->add_option("--bits", cfg.bits);
    atk->add_option("--seed", cfg.seed)->required();
    atk->add_option("--out", cfg.out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_gen_devices(cfg);
        if (*run) return cmd_run(cfg);
        if (*sw) return cmd_sweep(cfg);
        if (*reg) return cmd_register(cfg);
        if (*auth) return cmd_authenticate(cfg);
        if (*atk) return cmd_attack(cfg);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
