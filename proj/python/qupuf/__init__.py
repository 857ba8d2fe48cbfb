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

"""Python bindings for the QuPUF simulator."""

from ._qupuf import (  # noqa: F401
    AuthDecision,
    AuthOutcome,
    BinEncoding,
    ChallengeKey,
    CRPDatabase,
    DetectionReport,
    DeviceFingerprint,
    DeviceRegistry,
    HDStats,
    OperatingPoint,
    QuPUFChallenge,
    QubitParams,
    ResponseTrace,
    SchedulerPolicy,
    Signature,
    SweepConfig,
    SweepResult,
    Variant,
    allocate,
    choose_threshold,
    circuit_description,
    combined_deviation,
    digitize,
    execute_challenge,
    execute_on_allocation,
    find_isomorphic_embeddings,
    hamming_distance_pct,
    ideal_prob_one,
    inter_hd,
    intra_hd,
    line_coupling_map,
    load_registry,
    make_challenge_key,
    mean_signature,
    run_detection_experiment,
    sample_session,
    select_optimum,
    sweep,
    t_shape_coupling_map,
)

__version__ = "0.1.0"
