"""Bell-pair preparation and CHSH correlation estimation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..circuits import Circuit, cnot, h, ry
from ..errors import EmptyCounts
from ..sim import CountsTable, run


def make_bell() -> Circuit:
    """Two-qubit Bell pair (|00> + |11>)/sqrt(2)."""
    return Circuit(2, (h(0), cnot(0, 1)))


@dataclass(frozen=True)
class ChshSettings:
    """Analyzer angles (a, a', b, b'); the defaults maximize S at 2*sqrt(2)."""

    a: float = 0.0
    a_prime: float = math.pi / 2
    b: float = math.pi / 4
    b_prime: float = -math.pi / 4

    def pairs(self) -> tuple[tuple[float, float], ...]:
        return (
            (self.a, self.b),
            (self.a, self.b_prime),
            (self.a_prime, self.b),
            (self.a_prime, self.b_prime),
        )


def chsh_circuits(settings: ChshSettings = ChshSettings()) -> tuple[Circuit, ...]:
    """Four Bell circuits with analyzer rotations RY(-angle) before readout.

    Measuring Z after RY(-t) measures cos(t) Z + sin(t) X, so each angle
    selects an analyzer direction in the X-Z plane.
    """
    circuits = []
    for ang_a, ang_b in settings.pairs():
        gates = (h(0), cnot(0, 1), ry(0, -ang_a), ry(1, -ang_b))
        circuits.append(Circuit(2, gates))
    return tuple(circuits)


def _correlator(table: CountsTable) -> tuple[float, float]:
    """Two-qubit parity correlator and its binomial variance."""
    if not table.counts:
        raise EmptyCounts("correlator needs at least one outcome")
    signed = 0
    for key, v in table.counts.items():
        sign = 1 if (key.count("1") % 2 == 0) else -1
        signed += sign * v
    e = signed / table.shots
    var = (1.0 - e * e) / table.shots
    return e, max(var, 0.0)


def estimate_chsh(tables: Sequence[CountsTable]) -> tuple[float, float]:
    """CHSH S value and quadrature-propagated uncertainty from 4 counts tables.

    Tables must follow the chsh_circuits order [(a,b), (a,b'), (a',b),
    (a',b')]; S = E1 + E2 + E3 - E4.
    """
    if len(tables) != 4:
        raise ValueError(f"expected 4 counts tables, got {len(tables)}")
    correlators = [_correlator(t) for t in tables]
    s = correlators[0][0] + correlators[1][0] + correlators[2][0] - correlators[3][0]
    err = math.sqrt(sum(var for _, var in correlators))
    return s, err


def chsh_exact(settings: ChshSettings = ChshSettings()) -> tuple[float, float]:
    """S from exact simulated probabilities; uncertainty is exactly zero."""
    total = 0.0
    for i, c in enumerate(chsh_circuits(settings)):
        probs = run(c).probabilities()
        e = probs[0] - probs[1] - probs[2] + probs[3]
        total += e if i < 3 else -e
    return float(total), 0.0
