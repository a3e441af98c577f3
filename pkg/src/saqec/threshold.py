"""Noise thresholds where a capacity functional of a channel family reaches zero.

Both functionals are nonnegative (the coherent one includes the pure-state
candidate with value 0), so "reaching zero" is tested as
``value <= zero_tol``.  Several families only touch zero quadratically
(dephasing at ``p = 1/2``, completely depolarizing point), so ``zero_tol``
sets how close to the true crossing the bisection can resolve:
``lambda_star`` is accurate to roughly ``sqrt(zero_tol)``.

Functionals: ``coherent_1letter`` is ``max I_c`` per channel use (labelled
single-letter on purpose), ``mutual_half`` is ``max I / 2``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .channels import FAMILIES, FAMILY_DOMAINS, build_family
from .errors import BracketError, ValidationError
from .information import CapacityEstimate, maximize_capacity

FUNCTIONALS = {"coherent_1letter": "coherent", "mutual_half": "mutual"}

# where each family's coherent information is known to vanish, or its domain end
DEFAULT_BRACKETS = {
    "depolarizing": (0.0, 0.75),
    "dephasing": (0.0, 0.5),
    "amplitude_damping": (0.0, 1.0),
    "erasure": (0.0, 1.0),
}


@dataclass
class ThresholdResult:
    family: str
    functional: str
    lambda_star: float
    bracket: tuple[float, float]
    evaluations: int
    tolerance: float
    converged: bool = True
    boundary: bool = False
    letters: int = 1
    history: list = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "functional": self.functional,
            "letters": self.letters,
            "lambda_star": self.lambda_star,
            "bracket": list(self.bracket),
            "evaluations": self.evaluations,
            "tolerance": self.tolerance,
            "converged": self.converged,
            "boundary": self.boundary,
        }


def _check(family: str, functional: str):
    if family not in FAMILIES:
        raise ValidationError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if functional not in FUNCTIONALS:
        raise ValidationError(f"unknown functional {functional!r}; expected one of {tuple(FUNCTIONALS)}")


def evaluate(family: str, functional: str, lam: float, *, letters: int = 1, seed: int = 0,
             restarts: int = 5, warm_start=None) -> CapacityEstimate:
    _check(family, functional)
    return maximize_capacity(build_family(family, lam), FUNCTIONALS[functional], letters, restarts=restarts, seed=seed,
                             warm_start=warm_start)


def find_threshold(family: str, functional: str, bracket: Sequence[float] | None = None, tol: float = 1e-5, *,
                   zero_tol: float = 1e-9, letters: int = 1, seed: int = 0, restarts: int = 5,
                   allow_boundary: bool = False) -> ThresholdResult:
    """Bisect for the parameter at which the functional first reaches zero.

    The bracket must have a positive value at ``lo`` and a zero value at
    ``hi``; only those endpoint signs are assumed.  If both ends are positive
    and ``allow_boundary`` is set, ``hi`` is returned with ``boundary=True``
    (the functional does not vanish inside the bracket).
    """
    _check(family, functional)
    lo, hi = DEFAULT_BRACKETS[family] if bracket is None else (float(bracket[0]), float(bracket[1]))
    dlo, dhi = FAMILY_DOMAINS[family]
    if not (dlo <= lo < hi <= dhi):
        raise ValidationError(f"bracket ({lo}, {hi}) not inside the {family} domain [{dlo}, {dhi}]")
    if tol <= 0:
        raise ValidationError("tol must be positive")
    history = []
    converged = True
    warm = None

    def positive(lam: float) -> bool:
        nonlocal converged, warm
        est = evaluate(family, functional, lam, letters=letters, seed=seed, restarts=restarts, warm_start=warm)
        converged &= est.converged
        history.append((lam, est.value, est.converged))
        if est.value > zero_tol:
            warm = est.maximizer
            return True
        return False

    pos_lo, pos_hi = positive(lo), positive(hi)
    if not pos_lo:
        raise BracketError(f"{functional} of {family} is already zero at the lower end {lo}")
    if pos_hi:
        if allow_boundary:
            return ThresholdResult(family, functional, hi, (lo, hi), len(history), tol, converged, True, letters,
                                   history)
        raise BracketError(f"{functional} of {family} stays positive on ({lo}, {hi}); no threshold in bracket")
    a, b = lo, hi
    while b - a > tol:
        mid = (a + b) / 2
        if positive(mid):
            a = mid
        else:
            b = mid
    return ThresholdResult(family, functional, (a + b) / 2, (lo, hi), len(history), tol, converged, False, letters,
                           history)


@dataclass(frozen=True)
class SweepRow:
    family: str
    functional: str
    lam: float
    value: float
    converged: bool

    def as_dict(self) -> dict:
        return {"family": self.family, "functional": self.functional, "lambda": self.lam, "value": self.value,
                "converged": self.converged}


def sweep(family: str, functional: str, grid: Iterable[float], *, letters: int = 1, seed: int = 0,
          restarts: int = 5, threads: int = 1) -> list[SweepRow]:
    """One capacity evaluation per grid point, rows in grid order.

    Every point uses the same optimizer seed, so the output does not depend
    on ``threads``.
    """
    _check(family, functional)
    pts = [float(x) for x in grid]
    lo, hi = FAMILY_DOMAINS[family]
    bad = [x for x in pts if not lo <= x <= hi]
    if bad:
        raise ValidationError(f"grid points {bad} outside the {family} domain [{lo}, {hi}]")

    def one(lam: float) -> SweepRow:
        est = evaluate(family, functional, lam, letters=letters, seed=seed, restarts=restarts)
        return SweepRow(family, functional, lam, est.value, est.converged)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, pts))
    return [one(x) for x in pts]

