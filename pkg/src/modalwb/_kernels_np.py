"""Pure-numpy kernels for batched support/rejection evaluation.

Arrays are laid out (models, states): row m column j holds the answer
for state-bitmask j in model m. Masks fit in int64; state counts are
tiny (2^worlds), so kernels loop over states in Python and vectorize
over the model axis.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def ic_table(ifun: np.ndarray) -> np.ndarray:
    """ic[m, j] = state j is nonempty and i^u refines j for every u in j."""
    n_models, n_worlds = ifun.shape
    n_states = 1 << n_worlds
    ic = np.zeros((n_models, n_states), dtype=bool)
    for j in range(1, n_states):
        ok = np.ones(n_models, dtype=bool)
        for u in range(n_worlds):
            if j >> u & 1:
                ok &= (ifun[:, u] & ~j) == 0
        ic[:, j] = ok
    return ic


def atom_eval(val: np.ndarray, n_states: int) -> tuple[np.ndarray, np.ndarray]:
    states = np.arange(n_states, dtype=np.int64)[None, :]
    sup = (states & ~val[:, None]) == 0
    rej = (states & val[:, None]) == 0
    return sup, rej


def and_reject(
    r1: np.ndarray,
    r2: np.ndarray,
    cov_a: np.ndarray,
    cov_b: np.ndarray,
    cov_u: np.ndarray,
) -> np.ndarray:
    """rej[m, j] = some split j = a | b has r1 at a and r2 at b."""
    out = np.zeros_like(r1)
    for idx in range(cov_a.shape[0]):
        a = cov_a[idx]
        b = cov_b[idx]
        u = cov_u[idx]
        out[:, u] |= r1[:, a] & r2[:, b]
    return out


def _over_members(per_world: np.ndarray, conjunctive: bool) -> np.ndarray:
    """Fold per-world columns over the members of each state."""
    n_models, n_worlds = per_world.shape
    n_states = 1 << n_worlds
    out = np.empty((n_models, n_states), dtype=bool)
    for j in range(n_states):
        acc = np.full(n_models, conjunctive)
        for w in range(n_worlds):
            if j >> w & 1:
                if conjunctive:
                    acc = acc & per_world[:, w]
                else:
                    acc = acc | per_world[:, w]
        out[:, j] = acc
    return out


def might_eval(
    s1: np.ndarray, r1: np.ndarray, n_worlds: int
) -> tuple[np.ndarray, np.ndarray]:
    singles = [1 << w for w in range(n_worlds)]
    sup_single = s1[:, singles]
    rej_single = r1[:, singles]
    return _over_members(sup_single, False), _over_members(rej_single, True)


def know_pointwise(
    s1: np.ndarray, ifun: np.ndarray, kfun_a: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """K via worldly information: j ranges over i^u for u in k^w."""
    n_models, n_worlds = ifun.shape
    rows = np.arange(n_models)
    child_at_info = np.empty((n_models, n_worlds), dtype=bool)
    for u in range(n_worlds):
        child_at_info[:, u] = s1[rows, ifun[:, u]]
    sup_w = np.empty((n_models, n_worlds), dtype=bool)
    rej_w = np.empty((n_models, n_worlds), dtype=bool)
    for w in range(n_worlds):
        kw = kfun_a[:, w]
        every = np.ones(n_models, dtype=bool)
        some_not = np.zeros(n_models, dtype=bool)
        for u in range(n_worlds):
            member = (kw >> u & 1) == 1
            every &= ~member | child_at_info[:, u]
            some_not |= member & ~child_at_info[:, u]
        sup_w[:, w] = every
        rej_w[:, w] = some_not
    return _over_members(sup_w, True), _over_members(rej_w, True)


def know_acc(
    s1: np.ndarray, ic: np.ndarray, kfun_a: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """K via accessible refinements of k^w (the defining clause)."""
    n_models, n_worlds = kfun_a.shape
    n_states = s1.shape[1]
    sup_w = np.empty((n_models, n_worlds), dtype=bool)
    rej_w = np.empty((n_models, n_worlds), dtype=bool)
    for w in range(n_worlds):
        kw = kfun_a[:, w]
        every = np.ones(n_models, dtype=bool)
        some_not = np.zeros(n_models, dtype=bool)
        for j in range(1, n_states):
            refinement = ((j & ~kw) == 0) & ic[:, j]
            every &= ~refinement | s1[:, j]
            some_not |= refinement & ~s1[:, j]
        sup_w[:, w] = every
        rej_w[:, w] = some_not
    return _over_members(sup_w, True), _over_members(rej_w, True)
