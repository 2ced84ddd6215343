# Reproducible random streams.
#
# A (seed, label) pair goes through HKDF-SHA256 to a 128-bit Philox key, the same
# way a DH shared secret becomes a channel key. Replication r then uses the
# counter block starting at r << 192, so every replication has its own stream no
# matter how replications are split across workers.

import json

import numpy as np
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.kdf.hkdf import HKDF

MASK_64b = 0xFFFFFFFFFFFFFFFF
_INFO_PREFIX = b"fdr_forge_stream_v1:"


def derive_stream_key(seed: int, label: str) -> int:
    # 128-bit Philox key for a seed and a stream label.
    seed_bytes = (int(seed) & MASK_64b).to_bytes(8, "little")
    hkdf = HKDF(
        algorithm=hashes.SHA256(),
        length=16,
        salt=None,
        info=_INFO_PREFIX + label.encode("utf-8"),
    )
    return int.from_bytes(hkdf.derive(seed_bytes), "little")


def replication_rng(key: int, replication: int) -> np.random.Generator:
    counter = np.array([0, 0, 0, replication], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def derive_seed(seed: int, label: str) -> int:
    # 64-bit child seed, e.g. one per sub-run of an experiment.
    return derive_stream_key(seed, "seed:" + label) & MASK_64b


def content_hash(obj) -> str:
    # SHA-256 of the canonical JSON form; keys sweep cells and stream labels.
    canonical = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")
    digest = hashes.Hash(hashes.SHA256())
    digest.update(canonical)
    return digest.finalize().hex()
