"""Encoded-qubit constructions (dual-rail bosonic, repetition-code subsystem, three-spin
noiseless subsystem) and the checks that they carry a qubit's observable algebra."""

import json

from . import _core
from ._core import (
    DimensionError,
    EncodedQubitFrame,
    IsotypicSplitError,
    UsageError,
    anticommutator,
    bosonic,
    collective,
    commutant_basis,
    commutator,
    describe,
    eigh,
    evolve,
    expectation,
    generated_algebra_dim,
    isotypic_decomposition,
    kron,
    partial_trace,
    pauli_frame,
    pauli_x,
    pauli_y,
    pauli_z,
    random_haar_state,
    random_hermitian,
    repetition,
)


def verify_frame(frame, tol=1e-9):
    return json.loads(_core.verify_frame(frame, tol))


def run_suite(suite="all", tol=1e-9, seed=0, trials=100, cutoff=2):
    return json.loads(_core.run_suite_json(suite, tol, seed, trials, cutoff))
