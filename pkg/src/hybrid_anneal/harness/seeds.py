"""Seed derivation for experiment streams.

``derive_seed`` hashes ``"{label}|{index}|{master_seed}"`` with BLAKE2b
(8-byte digest, little-endian) into a 64-bit integer. Landscapes use labels
starting with ``instance`` and annealing runs labels starting with ``run``,
so adding runs never changes which instances are generated.
"""

import hashlib


def derive_seed(master_seed: int, stream_label: str, index: int) -> int:
    key = f"{stream_label}|{index}|{master_seed}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")


def instance_seed(master_seed: int, n_qubits: int, index: int) -> int:
    return derive_seed(master_seed, f"instance:N={n_qubits}", index)


def run_seed(master_seed: int, algorithm: str, n_qubits: int, instance: int, run: int) -> int:
    return derive_seed(master_seed, f"run:{algorithm}:N={n_qubits}:i={instance}", run)
