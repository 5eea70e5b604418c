"""Numba-compiled kernels; same contracts as _kernels_np.

Loops run model-major so each row of the (models, states) tables stays
in cache. First call per signature pays a JIT compile; cache=True keeps
compiled code across processes.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _ic_table(ifun, out):
    n_models, n_worlds = ifun.shape
    n_states = out.shape[1]
    for m in range(n_models):
        for j in range(1, n_states):
            ok = True
            for u in range(n_worlds):
                if j >> u & 1 and ifun[m, u] & ~j != 0:
                    ok = False
                    break
            out[m, j] = ok


def ic_table(ifun: np.ndarray) -> np.ndarray:
    out = np.zeros((ifun.shape[0], 1 << ifun.shape[1]), dtype=np.bool_)
    _ic_table(ifun, out)
    return out


@njit(cache=True)
def _atom_eval(val, sup, rej):
    n_models, n_states = sup.shape
    for m in range(n_models):
        v = val[m]
        for j in range(n_states):
            sup[m, j] = j & ~v == 0
            rej[m, j] = j & v == 0


def atom_eval(val: np.ndarray, n_states: int) -> tuple[np.ndarray, np.ndarray]:
    sup = np.empty((val.shape[0], n_states), dtype=np.bool_)
    rej = np.empty_like(sup)
    _atom_eval(val, sup, rej)
    return sup, rej


@njit(cache=True)
def _and_reject(r1, r2, cov_a, cov_b, cov_u, out):
    # rows are at most 2^16 wide, so each packs into one integer and
    # the split search runs on registers
    n_models, n_states = r1.shape
    n_pairs = cov_a.shape[0]
    for m in range(n_models):
        row1 = 0
        row2 = 0
        for j in range(n_states):
            if r1[m, j]:
                row1 |= 1 << j
            if r2[m, j]:
                row2 |= 1 << j
        acc = 0
        for idx in range(n_pairs):
            if row1 >> cov_a[idx] & 1 and row2 >> cov_b[idx] & 1:
                acc |= 1 << cov_u[idx]
        for j in range(n_states):
            out[m, j] = acc >> j & 1 == 1


def and_reject(r1, r2, cov_a, cov_b, cov_u) -> np.ndarray:
    out = np.empty_like(r1)
    _and_reject(r1, r2, cov_a, cov_b, cov_u, out)
    return out


@njit(cache=True)
def _might_eval(s1, r1, n_worlds, sup, rej):
    n_models, n_states = s1.shape
    for m in range(n_models):
        singles_sup = 0
        singles_rej = 0
        for w in range(n_worlds):
            if s1[m, 1 << w]:
                singles_sup |= 1 << w
            if r1[m, 1 << w]:
                singles_rej |= 1 << w
        for j in range(n_states):
            sup[m, j] = j & singles_sup != 0
            rej[m, j] = j & ~singles_rej == 0


def might_eval(s1, r1, n_worlds) -> tuple[np.ndarray, np.ndarray]:
    sup = np.empty_like(s1)
    rej = np.empty_like(s1)
    _might_eval(s1, r1, n_worlds, sup, rej)
    return sup, rej


@njit(cache=True)
def _know_pointwise(s1, ifun, kfun_a, sup, rej):
    n_models, n_states = s1.shape
    n_worlds = ifun.shape[1]
    for m in range(n_models):
        # per world w: does every / does some member u of k^w have the
        # child supported at i^u?
        every = 0
        some_not = 0
        for w in range(n_worlds):
            kw = kfun_a[m, w]
            all_ok = True
            one_bad = False
            for u in range(n_worlds):
                if kw >> u & 1 and not s1[m, ifun[m, u]]:
                    all_ok = False
                    one_bad = True
            if all_ok:
                every |= 1 << w
            if one_bad:
                some_not |= 1 << w
        for j in range(n_states):
            sup[m, j] = j & ~every == 0
            rej[m, j] = j & ~some_not == 0


def know_pointwise(s1, ifun, kfun_a) -> tuple[np.ndarray, np.ndarray]:
    sup = np.empty_like(s1)
    rej = np.empty_like(s1)
    _know_pointwise(s1, ifun, kfun_a, sup, rej)
    return sup, rej


@njit(cache=True)
def _know_acc(s1, ic, kfun_a, sup, rej):
    n_models, n_states = s1.shape
    n_worlds = kfun_a.shape[1]
    for m in range(n_models):
        every = 0
        some_not = 0
        for w in range(n_worlds):
            kw = kfun_a[m, w]
            all_ok = True
            one_bad = False
            for j in range(1, n_states):
                if j & ~kw == 0 and ic[m, j]:
                    if not s1[m, j]:
                        all_ok = False
                        one_bad = True
            if all_ok:
                every |= 1 << w
            if one_bad:
                some_not |= 1 << w
        for j in range(n_states):
            sup[m, j] = j & ~every == 0
            rej[m, j] = j & ~some_not == 0


def know_acc(s1, ic, kfun_a) -> tuple[np.ndarray, np.ndarray]:
    sup = np.empty_like(s1)
    rej = np.empty_like(s1)
    _know_acc(s1, ic, kfun_a, sup, rej)
    return sup, rej
