"""Three-compartment sequents and terminal classification.

A sequent <Theta ; Gamma => Delta> has three finite formula sets and an
E-flag; E-sequents additionally commit their satisfying world to E-reach
itself.  Terminal sequents split into axioms and flat sequents, with the
axiom/flat roles swapped between the validity calculus and the refutational
calculus.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .formula import (
    BOT,
    Bottom,
    Formula,
    K,
    Var,
    formula_from_json,
    formula_to_json,
    render,
    sorted_formulas,
)


class Logic(Enum):
    IEL = "iel"
    IEL_MINUS = "iel-"


class Calculus(Enum):
    LIEL = "liel"
    RIEL = "riel"


@dataclass(frozen=True)
class Sequent:
    theta: frozenset[Formula] = frozenset()
    gamma: frozenset[Formula] = frozenset()
    delta: frozenset[Formula] = frozenset()
    e_flag: bool = False


def sequent(theta: Iterable[Formula] = (), gamma: Iterable[Formula] = (),
            delta: Iterable[Formula] = (), e: bool = False) -> Sequent:
    return Sequent(frozenset(theta), frozenset(gamma), frozenset(delta), bool(e))


def gamma_vars(s: Sequent) -> frozenset[str]:
    """Variable names in the second compartment (valuation of glued roots)."""
    return frozenset(f.name for f in s.gamma if isinstance(f, Var))


def _vars_only(fs: frozenset[Formula]) -> bool:
    return all(isinstance(f, Var) for f in fs)


def _atoms_only(fs: frozenset[Formula]) -> bool:
    return all(isinstance(f, (Var, Bottom)) for f in fs)


def _vars_or_k(fs: frozenset[Formula]) -> bool:
    return all(isinstance(f, (Var, K)) for f in fs)


# ---------------------------------------------------------------------------
# Terminal classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TerminalClass:
    kind: str  # "axiom" | "flat" | "active"
    axiom: Optional[str] = None

    @property
    def is_axiom(self) -> bool:
        return self.kind == "axiom"

    @property
    def is_flat(self) -> bool:
        return self.kind == "flat"

    @property
    def is_active(self) -> bool:
        return self.kind == "active"


FLAT = TerminalClass("flat")
ACTIVE = TerminalClass("active")


def liel_axiom(s: Sequent) -> Optional[str]:
    """Axiom name for the validity calculus, or None.

    Irr/eIrr when falsum sits in the second compartment, Id/eId when the
    second and third compartments overlap; Irr wins when both match.
    """
    if BOT in s.gamma:
        return "eIrr" if s.e_flag else "Irr"
    if s.gamma & s.delta:
        return "eId" if s.e_flag else "Id"
    return None


def liel_flat(s: Sequent, logic: Logic) -> bool:
    """No rule of the validity calculus applies (and s is not an axiom).

    Under IEL the second compartment must hold variables only; under IEL-
    a non-E sequent may additionally keep K-formulas on the left, since the
    calculus for IEL- has no left rule for K on plain sequents.
    """
    if s.e_flag or logic is Logic.IEL:
        gamma_ok = _vars_only(s.gamma)
    else:
        gamma_ok = _vars_or_k(s.gamma)
    return gamma_ok and _atoms_only(s.delta) and not (s.gamma & s.delta)


def riel_axiom(s: Sequent, logic: Logic) -> Optional[str]:
    """Axiom name for the refutational calculus, or None."""
    disjoint = not (s.gamma & s.delta)
    if _vars_only(s.gamma) and _atoms_only(s.delta) and disjoint:
        return "eSat" if s.e_flag else "Sat"
    if (logic is Logic.IEL_MINUS and not s.e_flag
            and _vars_or_k(s.gamma) and _atoms_only(s.delta) and disjoint):
        return "kSat"
    return None


def riel_flat(s: Sequent) -> bool:
    """No refutational rule applies: falsum on the left, or the second and
    third compartments share a formula."""
    return BOT in s.gamma or bool(s.gamma & s.delta)


def classify(s: Sequent, calculus: Calculus, logic: Logic) -> TerminalClass:
    if calculus is Calculus.LIEL:
        name = liel_axiom(s)
        if name is not None:
            return TerminalClass("axiom", name)
        if liel_flat(s, logic):
            return FLAT
        return ACTIVE
    name = riel_axiom(s, logic)
    if name is not None:
        return TerminalClass("axiom", name)
    if riel_flat(s):
        return FLAT
    return ACTIVE


# ---------------------------------------------------------------------------
# Text and JSON forms
# ---------------------------------------------------------------------------

def _part(fs: frozenset[Formula]) -> str:
    return ", ".join(render(f) for f in sorted_formulas(fs))


def sequent_text(s: Sequent) -> str:
    text = f"{_part(s.theta)} ; {_part(s.gamma)} => {_part(s.delta)}"
    return text + " [E]" if s.e_flag else text


def sequent_to_json(s: Sequent) -> dict:
    return {
        "theta": [formula_to_json(f) for f in sorted_formulas(s.theta)],
        "gamma": [formula_to_json(f) for f in sorted_formulas(s.gamma)],
        "delta": [formula_to_json(f) for f in sorted_formulas(s.delta)],
        "e": s.e_flag,
    }


def sequent_from_json(obj: object) -> Sequent:
    if not isinstance(obj, dict):
        raise ValueError(f"not a sequent object: {obj!r}")
    parts = {}
    for key in ("theta", "gamma", "delta"):
        items = obj.get(key, [])
        if not isinstance(items, list):
            raise ValueError(f"sequent {key!r} must be a list")
        parts[key] = frozenset(formula_from_json(x) for x in items)
    e = obj.get("e", False)
    if not isinstance(e, bool):
        raise ValueError("sequent 'e' must be a boolean")
    return Sequent(parts["theta"], parts["gamma"], parts["delta"], e)
