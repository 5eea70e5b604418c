"""Information models over finite world sets.

An information state (intension) is a subset of the worlds, stored as a
bitmask: bit w set means world w belongs to the state. Three model kinds
share a valuation base:

* ``InformationModel`` -- worlds plus an atom valuation.
* ``ClassicalModel`` -- adds one epistemic state per world (reflexive).
* ``BoundedModel`` -- adds worldly information ``ifun`` and per-agent
  epistemic states ``kfun``, each accessible at its own world.

Enumerators yield every constraint-respecting model at a given size in a
fixed order, so counter-model searches are reproducible.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Union

__all__ = [
    "WORLD_CAP",
    "enumeration_cap",
    "full_mask",
    "mask_of",
    "worlds_in",
    "is_subset",
    "submasks",
    "InformationModel",
    "ClassicalModel",
    "BoundedModel",
    "Model",
    "Violation",
    "InvalidModelError",
    "validate",
    "is_internally_coherent",
    "is_accessible",
    "accessible_refinements",
    "enumerate_information_models",
    "enumerate_classical_models",
    "enumerate_bounded_models",
    "to_json_dict",
    "from_json_dict",
    "load_model",
    "save_model",
    "drop_world",
    "permute_worlds",
]

WORLD_CAP = 16
_DEFAULT_ENUM_CAP = 4
_ATOM_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


def enumeration_cap() -> int:
    """Max world count for exhaustive model enumeration (env-overridable)."""
    raw = os.environ.get("MODAL_WB_MAX_WORLDS")
    return int(raw) if raw else _DEFAULT_ENUM_CAP


# ---------------------------------------------------------------------------
# Bitmask intensions

def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(worlds) -> int:
    mask = 0
    for w in worlds:
        mask |= 1 << w
    return mask


def worlds_in(mask: int) -> list[int]:
    return [w for w in range(mask.bit_length()) if mask >> w & 1]


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """All subsets of mask, ascending."""
    for s in range(mask + 1):
        if s & ~mask == 0:
            yield s


# ---------------------------------------------------------------------------
# Model kinds

@dataclass(frozen=True)
class InformationModel:
    world_count: int
    valuation: Mapping[str, int]

    def __post_init__(self):
        if not 1 <= self.world_count <= WORLD_CAP:
            raise ValueError(f"world count must be in 1..{WORLD_CAP}")
        full = full_mask(self.world_count)
        for atom, mask in self.valuation.items():
            if not _ATOM_NAME_RE.match(atom):
                raise ValueError(f"bad atom name: {atom!r}")
            if mask & ~full:
                raise ValueError(f"valuation of {atom!r} mentions unknown worlds")

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(sorted(self.valuation))


@dataclass(frozen=True)
class ClassicalModel:
    base: InformationModel
    k: tuple[int, ...]

    @property
    def world_count(self) -> int:
        return self.base.world_count

    @property
    def valuation(self) -> Mapping[str, int]:
        return self.base.valuation


@dataclass(frozen=True)
class BoundedModel:
    base: InformationModel
    ifun: tuple[int, ...]
    kfun: Mapping[int, tuple[int, ...]]

    @property
    def world_count(self) -> int:
        return self.base.world_count

    @property
    def valuation(self) -> Mapping[str, int]:
        return self.base.valuation

    @property
    def agents(self) -> tuple[int, ...]:
        return tuple(sorted(self.kfun))


Model = Union[InformationModel, ClassicalModel, BoundedModel]


# ---------------------------------------------------------------------------
# Validation

@dataclass(frozen=True)
class Violation:
    clause: str
    world: int
    other: int | None = None
    agent: int | None = None

    def __str__(self) -> str:
        parts = [f"{self.clause} at world {self.world}"]
        if self.agent is not None:
            parts.append(f"agent {self.agent}")
        if self.other is not None:
            parts.append(f"via world {self.other}")
        return ", ".join(parts)


class InvalidModelError(ValueError):
    def __init__(self, violation: Violation):
        self.violation = violation
        super().__init__(str(violation))


def validate(m: Model) -> Violation | None:
    """First constraint violation, or None if the model is well-formed."""
    if isinstance(m, InformationModel):
        return None
    n = m.world_count
    full = full_mask(n)
    if isinstance(m, ClassicalModel):
        if len(m.k) != n:
            raise ValueError("k must assign a state to every world")
        for w in range(n):
            if m.k[w] & ~full:
                raise ValueError(f"k^{w} mentions unknown worlds")
            if not m.k[w] >> w & 1:
                return Violation("k-veridicality", w)
        return None

    if len(m.ifun) != n:
        raise ValueError("ifun must assign a state to every world")
    for agent, ks in m.kfun.items():
        if agent < 1:
            raise ValueError("agent indices start at 1")
        if len(ks) != n:
            raise ValueError(f"kfun for agent {agent} must cover every world")
    for w in range(n):
        if m.ifun[w] & ~full:
            raise ValueError(f"i^{w} mentions unknown worlds")
        if not m.ifun[w] >> w & 1:
            return Violation("i-veridicality", w)
    for agent in m.agents:
        ks = m.kfun[agent]
        for w in range(n):
            if ks[w] & ~full:
                raise ValueError(f"k^{w} for agent {agent} mentions unknown worlds")
            if not ks[w] >> w & 1:
                return Violation("k-veridicality", w, agent=agent)
    for w in range(n):
        for u in worlds_in(m.ifun[w]):
            if not is_subset(m.ifun[u], m.ifun[w]):
                return Violation("i-coherence", w, other=u)
    for agent in m.agents:
        ks = m.kfun[agent]
        for w in range(n):
            for u in worlds_in(ks[w]):
                if not is_subset(m.ifun[u], ks[w]):
                    return Violation("k-coherence", w, other=u, agent=agent)
    return None


# ---------------------------------------------------------------------------
# Coherence and accessibility

def is_internally_coherent(i: int, m: BoundedModel) -> bool:
    """Nonempty and refined by the worldly information of each member."""
    if i == 0:
        return False
    return all(is_subset(m.ifun[w], i) for w in worlds_in(i))


def is_accessible(j: int, w: int, m: BoundedModel) -> bool:
    """Internally coherent and veridical at w."""
    return bool(j >> w & 1) and is_internally_coherent(j, m)


def accessible_refinements(i: int, m: BoundedModel) -> set[int]:
    """Subsets of i that are accessible at some world of i."""
    members = worlds_in(i)
    return {
        j
        for j in submasks(i)
        if any(is_accessible(j, w, m) for w in members)
    }


# ---------------------------------------------------------------------------
# Enumeration

def _check_cap(n_worlds: int, cap: int | None) -> None:
    limit = enumeration_cap() if cap is None else cap
    if n_worlds > limit:
        raise ValueError(f"enumeration over {n_worlds} worlds exceeds cap {limit}")
    if n_worlds > WORLD_CAP or n_worlds < 1:
        raise ValueError(f"world count must be in 1..{WORLD_CAP}")


def enumerate_information_models(
    n_worlds: int, atoms: tuple[str, ...]
) -> Iterator[InformationModel]:
    """All valuations over the atoms, lexicographic by (atom-sorted) masks."""
    if not 1 <= n_worlds <= WORLD_CAP:
        raise ValueError(f"world count must be in 1..{WORLD_CAP}")
    names = sorted(atoms)
    n_states = 1 << n_worlds
    for masks in product(range(n_states), repeat=len(names)):
        yield InformationModel(n_worlds, dict(zip(names, masks)))


def enumerate_classical_models(
    n_worlds: int, atoms: tuple[str, ...], cap: int | None = None
) -> Iterator[ClassicalModel]:
    """All reflexive k-functions crossed with all valuations."""
    _check_cap(n_worlds, cap)
    k_candidates = [
        [mask for mask in range(1 << n_worlds) if mask >> w & 1]
        for w in range(n_worlds)
    ]
    for k in product(*k_candidates):
        for base in enumerate_information_models(n_worlds, atoms):
            yield ClassicalModel(base, k)


def _coherent_ifuns(n_worlds: int) -> Iterator[tuple[int, ...]]:
    candidates = [
        [mask for mask in range(1 << n_worlds) if mask >> w & 1]
        for w in range(n_worlds)
    ]
    for ifun in product(*candidates):
        if all(
            is_subset(ifun[u], ifun[w])
            for w in range(n_worlds)
            for u in worlds_in(ifun[w])
        ):
            yield ifun


def _kfun_candidates(ifun: tuple[int, ...], n_worlds: int) -> list[list[int]]:
    # k^w must contain w and be closed under the worldly information of
    # its members, which is exactly internal coherence given ifun.
    out = []
    for w in range(n_worlds):
        out.append(
            [
                mask
                for mask in range(1 << n_worlds)
                if mask >> w & 1
                and all(is_subset(ifun[u], mask) for u in worlds_in(mask))
            ]
        )
    return out


def enumerate_bounded_models(
    n_worlds: int,
    atoms: tuple[str, ...],
    agents: tuple[int, ...] = (1,),
    cap: int | None = None,
) -> Iterator[BoundedModel]:
    """Every valid bounded model: ifun x kfun-per-agent x valuation."""
    _check_cap(n_worlds, cap)
    agents = tuple(sorted(agents))
    if not agents:
        raise ValueError("need at least one agent")
    for ifun in _coherent_ifuns(n_worlds):
        per_world = _kfun_candidates(ifun, n_worlds)
        k_tuples = list(product(*per_world))
        for combo in product(k_tuples, repeat=len(agents)):
            kfun = dict(zip(agents, combo))
            for base in enumerate_information_models(n_worlds, atoms):
                yield BoundedModel(base, ifun, kfun)


# ---------------------------------------------------------------------------
# JSON interchange

def to_json_dict(m: Model) -> dict:
    out: dict = {
        "worlds": m.world_count,
        "valuation": {atom: worlds_in(mask) for atom, mask in sorted(m.valuation.items())},
    }
    if isinstance(m, ClassicalModel):
        out["k"] = {str(w): worlds_in(m.k[w]) for w in range(m.world_count)}
    elif isinstance(m, BoundedModel):
        out["ifun"] = {str(w): worlds_in(m.ifun[w]) for w in range(m.world_count)}
        out["kfun"] = {
            str(agent): {str(w): worlds_in(ks[w]) for w in range(m.world_count)}
            for agent, ks in sorted(m.kfun.items())
        }
    return out


def _mask_from_list(worlds, n: int, what: str) -> int:
    mask = 0
    for w in worlds:
        if not isinstance(w, int) or not 0 <= w < n:
            raise ValueError(f"{what}: world index {w!r} out of range 0..{n - 1}")
        mask |= 1 << w
    return mask


def _world_table(data: Mapping, n: int, what: str) -> tuple[int, ...]:
    out = []
    for w in range(n):
        key = str(w)
        if key not in data:
            raise ValueError(f"{what}: missing entry for world {w}")
        out.append(_mask_from_list(data[key], n, f"{what}[{w}]"))
    return tuple(out)


def from_json_dict(data: Mapping) -> Model:
    """Decode a model; validates and raises InvalidModelError if ill-formed."""
    if "worlds" not in data or "valuation" not in data:
        raise ValueError("model JSON needs 'worlds' and 'valuation'")
    n = data["worlds"]
    if not isinstance(n, int):
        raise ValueError("'worlds' must be an integer")
    valuation = {
        atom: _mask_from_list(ws, n, f"valuation[{atom}]")
        for atom, ws in data["valuation"].items()
    }
    base = InformationModel(n, valuation)
    model: Model
    if "kfun" in data or "ifun" in data:
        if "kfun" not in data or "ifun" not in data:
            raise ValueError("bounded model JSON needs both 'ifun' and 'kfun'")
        ifun = _world_table(data["ifun"], n, "ifun")
        kfun = {}
        for agent_key, table in data["kfun"].items():
            agent = int(agent_key)
            kfun[agent] = _world_table(table, n, f"kfun[{agent_key}]")
        model = BoundedModel(base, ifun, kfun)
    elif "k" in data:
        model = ClassicalModel(base, _world_table(data["k"], n, "k"))
    else:
        model = base
    violation = validate(model)
    if violation is not None:
        raise InvalidModelError(violation)
    return model


def load_model(path: str) -> Model:
    with open(path, encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))


def save_model(m: Model, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(m), fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# World surgery (counter-model minimization, isomorphism search)

def _compress(mask: int, keep: list[int]) -> int:
    out = 0
    for new, old in enumerate(keep):
        if mask >> old & 1:
            out |= 1 << new
    return out


def drop_world(m: Model, w: int) -> Model:
    """Remove world w and reindex; may yield an invalid model (validate!)."""
    n = m.world_count
    if n <= 1:
        raise ValueError("cannot drop the only world")
    keep = [u for u in range(n) if u != w]
    base = InformationModel(
        n - 1, {atom: _compress(mask, keep) for atom, mask in m.valuation.items()}
    )
    if isinstance(m, InformationModel):
        return base
    if isinstance(m, ClassicalModel):
        return ClassicalModel(base, tuple(_compress(m.k[u], keep) for u in keep))
    return BoundedModel(
        base,
        tuple(_compress(m.ifun[u], keep) for u in keep),
        {
            agent: tuple(_compress(ks[u], keep) for u in keep)
            for agent, ks in m.kfun.items()
        },
    )


def permute_worlds(m: Model, perm: tuple[int, ...]) -> Model:
    """Relabel worlds: world w becomes perm[w]."""
    n = m.world_count

    def remap(mask: int) -> int:
        out = 0
        for w in worlds_in(mask):
            out |= 1 << perm[w]
        return out

    inverse = [0] * n
    for w in range(n):
        inverse[perm[w]] = w
    base = InformationModel(n, {a: remap(mask) for a, mask in m.valuation.items()})
    if isinstance(m, InformationModel):
        return base
    if isinstance(m, ClassicalModel):
        return ClassicalModel(base, tuple(remap(m.k[inverse[w]]) for w in range(n)))
    return BoundedModel(
        base,
        tuple(remap(m.ifun[inverse[w]]) for w in range(n)),
        {
            agent: tuple(remap(ks[inverse[w]]) for w in range(n))
            for agent, ks in m.kfun.items()
        },
    )
