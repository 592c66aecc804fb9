"""Monte Carlo rounds of the displaced-parity key-distribution game.

Each round: Alice prepares |alpha + beta> with probability p_plus (else
|alpha - beta>), the channel acts, the preparation-matched corrective
displacement (gamma1 = -(alpha + beta) or gamma2 = -(alpha - beta)) is
announced publicly, Bob applies it to his system and samples parity, and,
when a Gaussian-cloning eavesdropper is present, Eve applies the same
announced displacement to her clone and samples parity as well.  Sifting
is a pass-through here: there is no basis mismatch to discard, but the
stage exists conceptually so channel models that corrupt announcements
could hook into it later.  Eve hears the announcement before measuring,
which is the stronger adversary (and the announcement precedes all
measurements anyway).

Random-stream discipline
------------------------
All randomness comes from a counter-based Philox generator keyed by the
master seed.  Round i owns the block of four uniforms at stream offsets
4 i .. 4 i + 3 (in order: preparation choice, mixture-component choice,
Bob's parity draw, Eve's parity draw), so any round's randomness is a pure
function of (seed, round index): rounds could be evaluated in any order or
in parallel without changing the transcript.  Parity draws map a single
uniform through the Poisson CDF exactly as the scalar sequential search in
coherent.poisson_draw does for means up to 30.  Identical configs produce
bit-identical transcripts.
"""

from __future__ import annotations

import io
import json
import math
import os
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .coherent import Parity, batch_parity_is_odd
from .keyrate import HALF_PI, binary_entropy
from .steering import Channel, GaussianCloneChannel, IdealChannel, LhsMixtureChannel

__all__ = [
    "Prep",
    "SimConfig",
    "RoundRecord",
    "SimStats",
    "ProtocolResult",
    "run_protocol",
    "sift",
    "empirical_key_rate",
    "write_transcript",
    "read_transcript",
]

_UNIFORMS_PER_ROUND = 4


class Prep(Enum):
    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class SimConfig:
    alpha: float
    beta: float
    p_plus: float = 0.5
    channel: Channel = IdealChannel()
    rounds: int = 1
    seed: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("alpha and beta must be finite")
        if not (0.0 <= self.p_plus <= 1.0):
            raise ValueError(f"p_plus must lie in [0, 1], got {self.p_plus!r}")
        if not isinstance(
            self.channel, (IdealChannel, GaussianCloneChannel, LhsMixtureChannel)
        ):
            raise ValueError(f"unknown channel model: {self.channel!r}")
        if int(self.rounds) != self.rounds or self.rounds < 1:
            raise ValueError(f"rounds must be a positive integer, got {self.rounds!r}")
        if int(self.seed) != self.seed or not (0 <= self.seed < 2**64):
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


class RoundRecord(NamedTuple):
    index: int
    prep: Prep
    announced_gamma: complex
    bob_outcome: Parity
    eve_outcome: Parity | None = None


@dataclass(frozen=True)
class SimStats:
    n_plus: int
    n_minus: int
    empirical_p01: float
    empirical_q01: float | None
    stderr_p01: float
    empirical_rate: float | None


@dataclass(frozen=True)
class ProtocolResult:
    stats: SimStats
    transcript: list[RoundRecord]


def _squared_modulus(values: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(values):
        return values.real**2 + values.imag**2
    return values**2


def run_protocol(config: SimConfig, keep_transcript: bool = True) -> ProtocolResult:
    """Simulate the configured number of rounds.

    ``keep_transcript=False`` skips building the per-round records (the
    aggregate statistics are unchanged); useful for large repetition
    studies.
    """
    rounds = int(config.rounds)
    alpha, beta = config.alpha, config.beta
    gamma1 = -(alpha + beta)
    gamma2 = -(alpha - beta)

    rng = np.random.Generator(np.random.Philox(key=config.seed))
    u = rng.random((rounds, _UNIFORMS_PER_ROUND))

    plus = u[:, 0] < config.p_plus
    prep_amp = np.where(plus, alpha + beta, alpha - beta)
    gamma = np.where(plus, gamma1, gamma2)

    channel = config.channel
    eve_received: np.ndarray | None = None
    if isinstance(channel, IdealChannel):
        bob_received = prep_amp
    elif isinstance(channel, GaussianCloneChannel):
        bob_received = prep_amp * math.cos(abs(channel.eta))
        eve_received = prep_amp * math.cos(HALF_PI - channel.eta)
    else:
        cum = np.cumsum(channel.weights)
        idx = np.searchsorted(cum, u[:, 1], side="right")
        idx = np.minimum(idx, len(channel.states) - 1)
        bob_received = np.asarray(channel.states, dtype=complex)[idx]

    bob_odd = batch_parity_is_odd(_squared_modulus(bob_received + gamma), u[:, 2])
    eve_odd: np.ndarray | None = None
    if eve_received is not None:
        eve_odd = batch_parity_is_odd(_squared_modulus(eve_received + gamma), u[:, 3])

    n_plus = int(np.count_nonzero(plus))
    p01 = float(np.count_nonzero(bob_odd)) / rounds
    q01 = float(np.count_nonzero(eve_odd)) / rounds if eve_odd is not None else None
    stderr = math.sqrt(p01 * (1.0 - p01) / rounds)
    rate = None
    if q01 is not None:
        rate = (1.0 - binary_entropy(p01)) - (1.0 - binary_entropy(q01))

    stats = SimStats(
        n_plus=n_plus,
        n_minus=rounds - n_plus,
        empirical_p01=p01,
        empirical_q01=q01,
        stderr_p01=stderr,
        empirical_rate=rate,
    )

    transcript: list[RoundRecord] = []
    if keep_transcript:
        plus_list = plus.tolist()
        gamma_list = gamma.tolist()
        bob_list = bob_odd.tolist()
        eve_list = eve_odd.tolist() if eve_odd is not None else None
        for i in range(rounds):
            transcript.append(
                RoundRecord(
                    index=i,
                    prep=Prep.PLUS if plus_list[i] else Prep.MINUS,
                    announced_gamma=complex(gamma_list[i]),
                    bob_outcome=Parity.ODD if bob_list[i] else Parity.EVEN,
                    eve_outcome=None
                    if eve_list is None
                    else (Parity.ODD if eve_list[i] else Parity.EVEN),
                )
            )
    return ProtocolResult(stats=stats, transcript=transcript)


def sift(transcript: list[RoundRecord]) -> list[RoundRecord]:
    """Sifting stage: a pass-through in this game.

    There is no basis mismatch to discard; the stage exists so channel
    models that corrupt announcements can drop rounds here later.
    """
    return list(transcript)


def empirical_key_rate(stats: SimStats) -> float:
    """(1 - H2(p01)) - (1 - H2(q01)) from empirical error estimates."""
    if stats.empirical_q01 is None:
        raise ValueError("no eavesdropper statistics present in this run")
    return (1.0 - binary_entropy(stats.empirical_p01)) - (
        1.0 - binary_entropy(stats.empirical_q01)
    )


_PARITY_LETTER = {Parity.EVEN: "E", Parity.ODD: "O"}
_LETTER_PARITY = {"E": Parity.EVEN, "O": Parity.ODD}


def _record_to_json(record: RoundRecord) -> str:
    obj = {
        "i": record.index,
        "prep": record.prep.value,
        "gamma_re": record.announced_gamma.real,
        "gamma_im": record.announced_gamma.imag,
        "bob": _PARITY_LETTER[record.bob_outcome],
    }
    if record.eve_outcome is not None:
        obj["eve"] = _PARITY_LETTER[record.eve_outcome]
    return json.dumps(obj, separators=(",", ":"))


def write_transcript(transcript: list[RoundRecord], sink) -> None:
    """Serialize records as JSONL, one object per line, UTF-8, LF endings.

    ``sink`` may be a path or a text file object.  The ``eve`` field is
    omitted, not null-encoded, when a round has no eavesdropper outcome.
    """
    lines = "".join(_record_to_json(r) + "\n" for r in transcript)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(lines)
    else:
        sink.write(lines)


def read_transcript(source) -> list[RoundRecord]:
    """Parse a JSONL transcript back into records."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source.read()
    records: list[RoundRecord] = []
    for line in io.StringIO(text):
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        records.append(
            RoundRecord(
                index=int(obj["i"]),
                prep=Prep(obj["prep"]),
                announced_gamma=complex(obj["gamma_re"], obj["gamma_im"]),
                bob_outcome=_LETTER_PARITY[obj["bob"]],
                eve_outcome=_LETTER_PARITY[obj["eve"]] if "eve" in obj else None,
            )
        )
    return records
