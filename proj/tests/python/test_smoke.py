# Copyright 2026 The QuPUF-Sim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import pytest

import qupuf


def make_device(device_id, seed, low, high):
    d = qupuf.DeviceFingerprint()
    d.device_id = device_id
    d.n_qubits = 5
    d.coupling_map = qupuf.t_shape_coupling_map()
    d.idle_gate_duration = 100.0
    d.base_seed = seed
    qubits = []
    for q in range(5):
        p = qupuf.QubitParams()
        p.read_flip_0to1 = low + 0.01 * q
        p.read_flip_1to0 = high + 0.02 * q
        p.t1 = 60.0 + 5.0 * q
        p.drift_sigma_readout = 0.005
        p.drift_sigma_bias = 0.01
        p.drift_sigma_t1_rel = 0.01
        qubits.append(p)
    d.qubits = qubits
    return d


def hadamard(theta, shots=2048, experiments=10):
    c = qupuf.QuPUFChallenge()
    c.variant = qupuf.Variant.Hadamard
    c.theta = theta
    c.shots = shots
    c.n_experiments = experiments
    return c


def test_version():
    assert qupuf.__version__ == "0.1.0"


def test_digitize_and_hex():
    sig = qupuf.digitize([0.5] * 5, 5)
    assert sig.to_hex() == "5x5:0x1084210"
    assert qupuf.Signature.from_hex(sig.to_hex()) == sig
    assert qupuf.hamming_distance_pct(sig, sig.complement()) == 100.0
    with pytest.raises(ValueError):
        qupuf.digitize([1.5], 5)


def test_combined_deviation():
    assert abs(qupuf.combined_deviation(55.3, 13.82) - 19.12) < 1e-9


def test_ideal_probability():
    p = qupuf.QubitParams()
    p.t1 = 50.0
    got = qupuf.ideal_prob_one(qupuf.Variant.Hadamard, 3.0, 0, p, 100.0)
    assert abs(got - 0.5 * (1 + math.sin(math.radians(3.0)))) < 1e-12


def test_execute_is_deterministic():
    d = make_device("A", 1, 0.02, 0.2)
    a = qupuf.execute_challenge(d, hadamard(3.0), 42)
    b = qupuf.execute_challenge(d, hadamard(3.0), 42)
    assert a.to_json() == b.to_json()
    assert len(a.sessions) == 10
    assert json.loads(a.to_json())["device"] == "A"
    intra = qupuf.intra_hd(a, 5)
    assert intra.count == 45
    assert 0.0 <= intra.mean <= 100.0


def test_embeddings():
    host = make_device("H", 3, 0.02, 0.2)
    found = qupuf.find_isomorphic_embeddings(host, qupuf.line_coupling_map(3), 3)
    assert [0, 1, 2] in [list(e) for e in found]


def test_auth_and_attack(tmp_path):
    a = make_device("A", 1, 0.02, 0.2)
    b = make_device("B", 2, 0.2, 0.02)
    registry = qupuf.DeviceRegistry([a, b])
    assert "A" in registry and len(registry) == 2
    with pytest.raises(KeyError):
        registry.at("nope")

    challenge = hadamard(3.0)
    db = qupuf.CRPDatabase()
    db.register_device(a, challenge, 5, 10)
    db.register_device(b, challenge, 5, 11)
    key = qupuf.make_challenge_key(challenge, 5)

    path = tmp_path / "db.json"
    db.save(path)
    db = qupuf.CRPDatabase.load(path)
    assert len(db) == 2

    honest = qupuf.run_detection_experiment(registry, db, "A", qupuf.SchedulerPolicy.honest(), key, 10, 5)
    assert honest.honest_accept_rate == 1.0
    assert honest.attack_detect_rate is None
    attack = qupuf.run_detection_experiment(
        registry, db, "A", qupuf.SchedulerPolicy.parse("reroute:B"), key, 10, 5)
    assert attack.attack_detect_rate == 1.0
    assert "attack_detect" in attack.summary()


def test_sweep_and_optimum():
    cfg = qupuf.SweepConfig()
    cfg.theta_values = [1.0, 3.0]
    cfg.precisions = [4, 5]
    cfg.shots = 512
    cfg.n_experiments = 5
    cfg.seed = 9
    result = qupuf.sweep([make_device("A", 1, 0.02, 0.2), make_device("B", 2, 0.2, 0.02)], cfg)
    assert len(result.rows) == 4
    best = qupuf.select_optimum(result)
    assert best.combined == min(r.combined for r in result.rows)
    assert result.to_csv().splitlines()[0].startswith("theta_deg,precision_bits")
