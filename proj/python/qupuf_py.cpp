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

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qupuf/auth.hpp"
#include "qupuf/circuits.hpp"
#include "qupuf/cloud_sim.hpp"
#include "qupuf/device_model.hpp"
#include "qupuf/error.hpp"
#include "qupuf/metrics.hpp"
#include "qupuf/signature.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace qupuf;

PYBIND11_MODULE(_qupuf, m) {
    m.doc() = "QuPUF simulator: noisy device fingerprints, PUF circuits, signatures and authentication";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NotFoundError>(m, "NotFoundError", PyExc_KeyError);

    py::class_<QubitParams>(m, "QubitParams")
        .def(py::init<>())
        .def_readwrite("read_flip_0to1", &QubitParams::read_flip_0to1)
        .def_readwrite("read_flip_1to0", &QubitParams::read_flip_1to0)
        .def_readwrite("rotation_bias", &QubitParams::rotation_bias)
        .def_readwrite("t1", &QubitParams::t1)
        .def_readwrite("drift_sigma_readout", &QubitParams::drift_sigma_readout)
        .def_readwrite("drift_sigma_bias", &QubitParams::drift_sigma_bias)
        .def_readwrite("drift_sigma_t1_rel", &QubitParams::drift_sigma_t1_rel)
        .def("validate", &QubitParams::validate, "where"_a = "qubit")
        .def(py::self == py::self);

    py::class_<DeviceFingerprint>(m, "DeviceFingerprint")
        .def(py::init<>())
        .def_readwrite("device_id", &DeviceFingerprint::device_id)
        .def_readwrite("n_qubits", &DeviceFingerprint::n_qubits)
        .def_readwrite("coupling_map", &DeviceFingerprint::coupling_map)
        .def_readwrite("qubits", &DeviceFingerprint::qubits)
        .def_readwrite("idle_gate_duration", &DeviceFingerprint::idle_gate_duration)
        .def_readwrite("base_seed", &DeviceFingerprint::base_seed)
        .def("validate", &DeviceFingerprint::validate);

    py::class_<SessionParams>(m, "SessionParams")
        .def_readonly("qubits", &SessionParams::qubits)
        .def_readonly("session_index", &SessionParams::session_index);

    py::class_<DeviceRegistry>(m, "DeviceRegistry")
        .def(py::init<>())
        .def(py::init<std::vector<DeviceFingerprint>>())
        .def("add", &DeviceRegistry::add)
        .def("at", &DeviceRegistry::at, py::return_value_policy::copy)
        .def("__contains__", &DeviceRegistry::contains)
        .def("__len__", &DeviceRegistry::size)
        .def("ids", &DeviceRegistry::ids)
        .def("devices", &DeviceRegistry::devices);

    m.def("load_registry", &load_registry, "path"_a);
    m.def("sample_session", &sample_session, "device"_a, "session_index"_a, "rng_seed"_a);
    m.def("find_isomorphic_embeddings", &find_isomorphic_embeddings, "host"_a, "guest_coupling_map"_a,
          "guest_n_qubits"_a);
    m.def("t_shape_coupling_map", &t_shape_coupling_map);
    m.def("line_coupling_map", &line_coupling_map, "n_qubits"_a);

    py::enum_<Variant>(m, "Variant")
        .value("Hadamard", Variant::Hadamard)
        .value("Decoherence", Variant::Decoherence);

    py::class_<QuPUFChallenge>(m, "QuPUFChallenge")
        .def(py::init<>())
        .def_readwrite("variant", &QuPUFChallenge::variant)
        .def_readwrite("theta", &QuPUFChallenge::theta)
        .def_readwrite("idle_count", &QuPUFChallenge::idle_count)
        .def_readwrite("shots", &QuPUFChallenge::shots)
        .def_readwrite("n_experiments", &QuPUFChallenge::n_experiments)
        .def_readwrite("qubit_subset", &QuPUFChallenge::qubit_subset)
        .def("validate", &QuPUFChallenge::validate);

    py::class_<SessionRecord>(m, "SessionRecord")
        .def_readonly("session_index", &SessionRecord::session_index)
        .def_readonly("prob_one", &SessionRecord::prob_one)
        .def_readonly("one_counts", &SessionRecord::one_counts);

    py::class_<ResponseTrace>(m, "ResponseTrace")
        .def_readonly("device_id", &ResponseTrace::device_id)
        .def_readonly("allocated_id", &ResponseTrace::allocated_id)
        .def_readonly("challenge", &ResponseTrace::challenge)
        .def_readonly("sessions", &ResponseTrace::sessions)
        .def("to_json", [](const ResponseTrace &t) { return nlohmann::json(t).dump(); });

    m.def("ideal_prob_one", &ideal_prob_one, "variant"_a, "theta_deg"_a, "idle_count"_a, "params"_a,
          "idle_gate_duration_ns"_a);
    m.def("execute_challenge", &execute_challenge, "device"_a, "challenge"_a, "rng_seed"_a);
    m.def("circuit_description", &circuit_description, "challenge"_a, "n_qubits"_a);

    py::enum_<BinEncoding>(m, "BinEncoding").value("Binary", BinEncoding::Binary).value("Gray", BinEncoding::Gray);

    py::class_<Signature>(m, "Signature")
        .def_static("from_bits", &Signature::from_bits, "bits"_a, "precision"_a, "n_qubits"_a)
        .def_static("from_hex", &Signature::from_hex, "text"_a)
        .def_property_readonly("precision", &Signature::precision)
        .def_property_readonly("n_qubits", &Signature::n_qubits)
        .def("__len__", &Signature::size)
        .def("to_bits", &Signature::to_bits)
        .def("to_hex", &Signature::to_hex)
        .def("complement", &Signature::complement)
        .def("__repr__", [](const Signature &s) { return "Signature('" + s.to_hex() + "')"; })
        .def(py::self == py::self);

    m.def(
        "digitize",
        [](const std::vector<double> &p, int precision, BinEncoding enc) { return digitize(p, precision, enc); },
        "prob_one"_a, "precision"_a, "encoding"_a = BinEncoding::Binary);
    m.def("hamming_distance_pct", &hamming_distance_pct, "a"_a, "b"_a);
    m.def("mean_signature", &mean_signature, "trace"_a, "precision"_a, "encoding"_a = BinEncoding::Binary);

    py::class_<HDStats>(m, "HDStats")
        .def_readonly("mean", &HDStats::mean)
        .def_readonly("sigma", &HDStats::sigma)
        .def_readonly("count", &HDStats::count)
        .def_readonly("distribution", &HDStats::distribution);

    m.def("intra_hd", py::overload_cast<const ResponseTrace &, int, BinEncoding>(&intra_hd), "trace"_a,
          "precision"_a, "encoding"_a = BinEncoding::Binary);
    m.def("inter_hd", py::overload_cast<const ResponseTrace &, const ResponseTrace &, int, BinEncoding>(&inter_hd),
          "trace_a"_a, "trace_b"_a, "precision"_a, "encoding"_a = BinEncoding::Binary);
    m.def("combined_deviation", &combined_deviation, "inter_mean"_a, "intra_mean"_a);

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("variant", &SweepConfig::variant)
        .def_readwrite("theta_values", &SweepConfig::theta_values)
        .def_readwrite("precisions", &SweepConfig::precisions)
        .def_readwrite("idle_values", &SweepConfig::idle_values)
        .def_readwrite("shots", &SweepConfig::shots)
        .def_readwrite("n_experiments", &SweepConfig::n_experiments)
        .def_readwrite("seed", &SweepConfig::seed)
        .def_readwrite("designated_device", &SweepConfig::designated_device)
        .def_readwrite("designated_pair", &SweepConfig::designated_pair)
        .def_readwrite("encoding", &SweepConfig::encoding);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("theta", &SweepRow::theta)
        .def_readonly("precision", &SweepRow::precision)
        .def_readonly("idle_count", &SweepRow::idle_count)
        .def_readonly("intra", &SweepRow::intra)
        .def_readonly("inter", &SweepRow::inter)
        .def_readonly("combined", &SweepRow::combined);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("device_ids", &SweepResult::device_ids)
        .def_readonly("pairs", &SweepResult::pairs)
        .def_readonly("rows", &SweepResult::rows)
        .def("to_csv", &SweepResult::to_csv);

    py::class_<OperatingPoint>(m, "OperatingPoint")
        .def_readonly("theta", &OperatingPoint::theta)
        .def_readonly("precision", &OperatingPoint::precision)
        .def_readonly("idle_count", &OperatingPoint::idle_count)
        .def_readonly("combined", &OperatingPoint::combined);

    m.def("sweep", &sweep, "devices"_a, "config"_a);
    m.def("select_optimum", &select_optimum, "result"_a);

    py::class_<ChallengeKey>(m, "ChallengeKey")
        .def_readonly("variant", &ChallengeKey::variant)
        .def_readonly("theta_decidegrees", &ChallengeKey::theta_decidegrees)
        .def_readonly("idle_count", &ChallengeKey::idle_count)
        .def_readonly("precision", &ChallengeKey::precision)
        .def("__repr__", [](const ChallengeKey &k) { return to_string(k); });
    m.def("make_challenge_key", &make_challenge_key, "challenge"_a, "precision"_a);

    py::enum_<AuthOutcome>(m, "AuthOutcome")
        .value("Accepted", AuthOutcome::Accepted)
        .value("Rejected", AuthOutcome::Rejected)
        .value("Unknown", AuthOutcome::Unknown);

    py::class_<AuthDecision>(m, "AuthDecision")
        .def_readonly("outcome", &AuthDecision::outcome)
        .def_readonly("best_match_id", &AuthDecision::best_match_id)
        .def_readonly("hd_to_best", &AuthDecision::hd_to_best)
        .def_readonly("threshold", &AuthDecision::threshold);

    m.def("choose_threshold", &choose_threshold, "intra"_a, "inter"_a);

    py::class_<CRPDatabase>(m, "CRPDatabase")
        .def(py::init<>())
        .def(
            "register_device",
            [](CRPDatabase &db, const DeviceFingerprint &d, const QuPUFChallenge &c, int precision, std::uint64_t seed,
               bool overwrite) { db.register_device(d, c, precision, seed, overwrite); },
            "device"_a, "challenge"_a, "precision"_a, "seed"_a, "overwrite"_a = false)
        .def("identify", &CRPDatabase::identify, "response"_a, "key"_a)
        .def("verify", &CRPDatabase::verify, "claimed_id"_a, "response"_a, "key"_a)
        .def("__len__", &CRPDatabase::size)
        .def("save", &CRPDatabase::save, "path"_a)
        .def_static("load", &CRPDatabase::load, "path"_a);

    py::class_<SchedulerPolicy>(m, "SchedulerPolicy")
        .def_static("parse", &SchedulerPolicy::parse, "text"_a)
        .def_static("honest", &SchedulerPolicy::honest)
        .def_static("reroute_same_shape", &SchedulerPolicy::reroute_same_shape, "target"_a)
        .def_static("reroute_subgraph", &SchedulerPolicy::reroute_subgraph, "host"_a, "factor"_a)
        .def("__repr__", &SchedulerPolicy::to_string);

    py::class_<AllocationEvent>(m, "AllocationEvent")
        .def_readonly("requested_id", &AllocationEvent::requested_id)
        .def_readonly("allocated_id", &AllocationEvent::allocated_id)
        .def_readonly("qubit_mapping", &AllocationEvent::qubit_mapping)
        .def_readonly("crosstalk_applied", &AllocationEvent::crosstalk_applied);

    py::class_<DetectionReport>(m, "DetectionReport")
        .def_readonly("trials", &DetectionReport::trials)
        .def_readonly("honest_accept_rate", &DetectionReport::honest_accept_rate)
        .def_readonly("false_reject_rate", &DetectionReport::false_reject_rate)
        .def_readonly("attack_detect_rate", &DetectionReport::attack_detect_rate)
        .def_readonly("decisions", &DetectionReport::decisions)
        .def("summary", &DetectionReport::summary);

    m.def("allocate", &allocate, "registry"_a, "requested_id"_a, "policy"_a, "rng_seed"_a);
    m.def("execute_on_allocation", &execute_on_allocation, "event"_a, "challenge"_a, "registry"_a, "rng_seed"_a);
    m.def("run_detection_experiment", &run_detection_experiment, "registry"_a, "db"_a, "requested_id"_a, "policy"_a,
          "key"_a, "trials"_a, "seed"_a);
}
