from __future__ import annotations

from dataclasses import dataclass, asdict


@dataclass
class Bounds:
    """Search bounds shared by the harness commands.

    B: vanishing bound for the "for all i >= 1" conditions (None = depth R + 6).
    w: radius of the certified Tate window [-w, n + w].
    D: Hilbert window, degrees -D..D.
    """
    B: int | None = None
    w: int = 4
    D: int = 20
    seed: int = 0

    def degrees(self) -> list:
        return list(range(-self.D, self.D + 1))

    def to_json(self) -> dict:
        return asdict(self)
