"""Batched evaluation of support/rejection over enumerated model sets.

Exhaustive sweeps (consequence checks, invariant suites) evaluate one
formula against tens of thousands of models at once. Models are packed
into integer arrays and each connective becomes an array kernel; the
kernels come in two interchangeable flavors, numba-compiled loops and
pure numpy, selected by the MODAL_WB_BACKEND environment variable
("numba" or "numpy", default numba with numpy fallback).

Evaluation caches per formula node by identity, so constructions that
share subterm objects (enumerated formula sets, normal forms) pay for
each distinct subterm once.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .models import BoundedModel, enumerate_bounded_models
from .results import UnknownAgentError, UnknownAtomError
from .syntax import And, Atom, Formula, Know, Might, Neg

__all__ = [
    "Batch",
    "build_batch",
    "bounded_batch",
    "evaluate",
    "covers",
    "first_hit",
    "backend_name",
    "get_backend",
]

_ENV_BACKEND = "MODAL_WB_BACKEND"
_ENV_CHECK_K = "MODAL_WB_CHECK_K"


def get_backend(name: str | None = None):
    """Kernel module for `name`, or the environment/default choice."""
    choice = name or os.environ.get(_ENV_BACKEND, "")
    if choice == "numpy":
        from . import _kernels_np

        return _kernels_np
    if choice == "numba":
        from . import _kernels_nb

        return _kernels_nb
    if choice:
        raise ValueError(f"unknown backend {choice!r} (use 'numba' or 'numpy')")
    try:
        from . import _kernels_nb

        return _kernels_nb
    except ImportError:
        from . import _kernels_np

        return _kernels_np


def backend_name(name: str | None = None) -> str:
    return get_backend(name).NAME


@dataclass
class Batch:
    """A fixed model set packed into arrays, plus the source models."""

    n_worlds: int
    atoms: tuple[str, ...]
    agents: tuple[int, ...]
    models: list[BoundedModel]
    val: dict[str, np.ndarray]  # atom -> (M,) int64 valuation masks
    ifun: np.ndarray  # (M, n) int64
    kfun: dict[int, np.ndarray]  # agent -> (M, n) int64
    ic: dict[str, np.ndarray] = field(default_factory=dict)  # backend -> (M, S) bool
    _atom_tables: dict = field(default_factory=dict)

    @property
    def n_states(self) -> int:
        return 1 << self.n_worlds

    @property
    def size(self) -> int:
        return len(self.models)

    def ic_table(self, backend) -> np.ndarray:
        cached = self.ic.get(backend.NAME)
        if cached is None:
            cached = backend.ic_table(self.ifun)
            self.ic[backend.NAME] = cached
        return cached

    def atom_tables(self, backend, name: str) -> tuple[np.ndarray, np.ndarray]:
        # atom tables depend only on the batch, so they are shared
        # across every formula evaluated against it
        key = (backend.NAME, name)
        cached = self._atom_tables.get(key)
        if cached is None:
            try:
                val = self.val[name]
            except KeyError:
                raise UnknownAtomError(name) from None
            cached = backend.atom_eval(val, self.n_states)
            self._atom_tables[key] = cached
        return cached


def build_batch(models: Iterable[BoundedModel]) -> Batch:
    models = list(models)
    if not models:
        raise ValueError("empty model set")
    first = models[0]
    n = first.world_count
    atoms = first.base.atoms
    agents = first.agents
    m_count = len(models)
    val = {a: np.empty(m_count, dtype=np.int64) for a in atoms}
    ifun = np.empty((m_count, n), dtype=np.int64)
    kfun = {a: np.empty((m_count, n), dtype=np.int64) for a in agents}
    for idx, m in enumerate(models):
        if m.world_count != n or m.base.atoms != atoms or m.agents != agents:
            raise ValueError("models in a batch must share worlds, atoms, agents")
        for a in atoms:
            val[a][idx] = m.valuation[a]
        ifun[idx, :] = m.ifun
        for agent in agents:
            kfun[agent][idx, :] = m.kfun[agent]
    return Batch(n, atoms, agents, models, val, ifun, kfun)


_batch_cache: dict[tuple, Batch] = {}
_BATCH_CACHE_MAX = 12


def bounded_batch(
    n_worlds: int, atoms: tuple[str, ...], agents: tuple[int, ...] = (1,)
) -> Batch:
    """Batch of every valid bounded model at this size, enumeration order."""
    key = (n_worlds, tuple(sorted(atoms)), tuple(sorted(agents)))
    batch = _batch_cache.get(key)
    if batch is None:
        batch = build_batch(enumerate_bounded_models(n_worlds, atoms, agents))
        if len(_batch_cache) >= _BATCH_CACHE_MAX:
            _batch_cache.pop(next(iter(_batch_cache)))
        _batch_cache[key] = batch
    return batch


_covers_cache: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def covers(n_states: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Arrays (a, b, a|b) over every ordered pair of states.

    Every ordered pair (a, b) is a split of the state a | b; empty
    halves included, which the rejection clause for conjunction needs.
    """
    cached = _covers_cache.get(n_states)
    if cached is None:
        pairs = [(a, b, a | b) for a in range(n_states) for b in range(n_states)]
        arr = np.array(pairs, dtype=np.int64)
        cached = (
            np.ascontiguousarray(arr[:, 0]),
            np.ascontiguousarray(arr[:, 1]),
            np.ascontiguousarray(arr[:, 2]),
        )
        _covers_cache[n_states] = cached
    return cached


def default_k_impl() -> str:
    return "check" if os.environ.get(_ENV_CHECK_K) else "pointwise"


def evaluate(
    batch: Batch,
    f: Formula,
    k_impl: str | None = None,
    backend=None,
    memo: dict | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """(support, reject) tables of shape (models, states) for formula f.

    k_impl selects the K clause: "acc" quantifies over accessible
    refinements (the defining form), "pointwise" over worldly
    information (the fast form), "check" runs both and asserts they
    agree.

    An explicit memo dict may be shared across calls on the same batch
    with the same k_impl/backend; the formulas involved must stay alive
    while it is in use (entries are keyed by node identity).
    """
    be = backend if backend is not None else get_backend()
    mode = k_impl or default_k_impl()
    n_states = batch.n_states
    cov = covers(n_states)
    if memo is None:
        memo = {}

    def know_tables(sup_child: np.ndarray, agent: int):
        try:
            kfun_a = batch.kfun[agent]
        except KeyError:
            raise UnknownAgentError(agent) from None
        if mode == "pointwise":
            return be.know_pointwise(sup_child, batch.ifun, kfun_a)
        if mode == "acc":
            return be.know_acc(sup_child, batch.ic_table(be), kfun_a)
        fast = be.know_pointwise(sup_child, batch.ifun, kfun_a)
        slow = be.know_acc(sup_child, batch.ic_table(be), kfun_a)
        if not (np.array_equal(fast[0], slow[0]) and np.array_equal(fast[1], slow[1])):
            raise AssertionError("K clause disagreement between acc and pointwise forms")
        return fast

    def rec(node: Formula) -> tuple[np.ndarray, np.ndarray]:
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Atom):
            res = batch.atom_tables(be, node.name)
        elif isinstance(node, Neg):
            sup, rej = rec(node.child)
            res = (rej, sup)
        elif isinstance(node, And):
            ls, lr = rec(node.left)
            rs, rr = rec(node.right)
            res = (ls & rs, be.and_reject(lr, rr, *cov))
        elif isinstance(node, Might):
            sup, rej = rec(node.child)
            res = be.might_eval(sup, rej, batch.n_worlds)
        elif isinstance(node, Know):
            sup, _ = rec(node.child)
            res = know_tables(sup, node.agent)
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[key] = res
        return res

    return rec(f)


def first_hit(mask: np.ndarray) -> tuple[int, int] | None:
    """Lowest (model index, state) with a True entry, C-order."""
    flat = np.flatnonzero(mask.ravel())
    if flat.size == 0:
        return None
    idx = int(flat[0])
    return divmod(idx, mask.shape[1])
