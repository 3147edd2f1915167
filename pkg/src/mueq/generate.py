"""Enumeration and random generation of mu-types for testing and corpora."""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Sequence

from .reduction import one_step_reducts
from .syntax import Arrow, Atom, Mu, MuType, free_vars, fresh_name, length

__all__ = ["enumerate_types", "count_types", "random_type", "random_reduct", "random_pair", "rename_bound"]


def enumerate_types(max_len: int, names: Sequence[str] = ("a", "b")) -> Iterator[MuType]:
    """Every type of length ``<= max_len`` whose identifiers (atoms and
    binders alike) come from ``names``."""
    for n in range(1, max_len + 1):
        yield from _exact(n, tuple(names))


@lru_cache(maxsize=None)
def _exact(n: int, names: tuple[str, ...]) -> tuple[MuType, ...]:
    if n == 1:
        return tuple(Atom(x) for x in names)
    out = [Mu(x, body) for x in names for body in _exact(n - 1, names)]
    for i in range(1, n - 1):
        for left in _exact(i, names):
            for right in _exact(n - 1 - i, names):
                out.append(Arrow(left, right))
    return tuple(out)


def count_types(n: int, k: int = 2) -> int:
    """Number of types of length exactly ``n`` over ``k`` names."""
    if n == 1:
        return k
    return k * count_types(n - 1, k) + sum(count_types(i, k) * count_types(n - 1 - i, k) for i in range(1, n - 1))


def random_type(rng: random.Random, max_len: int, atoms: Sequence[str] = ("a", "b"),
                binders: Sequence[str] = ("x", "y", "z")) -> MuType:
    """Random type of length ``<= max_len``.

    Binders are drawn from ``binders`` and atoms preferentially refer to an
    enclosing binder, so recursion actually occurs.
    """
    budget = rng.randint(1, max_len)

    def go(n: int, scope: tuple[str, ...]) -> MuType:
        if n <= 2:
            if n == 2 and rng.random() < 0.5:
                b = rng.choice(binders)
                return Mu(b, go(1, scope + (b,)))
            if scope and rng.random() < 0.7:
                return Atom(rng.choice(scope))
            return Atom(rng.choice(atoms))
        if rng.random() < 0.4:
            b = rng.choice(binders)
            return Mu(b, go(n - 1, scope + (b,)))
        split = rng.randint(1, n - 2)
        return Arrow(go(split, scope), go(n - 1 - split, scope))

    return go(budget, ())


def random_reduct(rng: random.Random, t: MuType, steps: int) -> MuType:
    for _ in range(steps):
        options = one_step_reducts(t)
        if not options:
            break
        t = rng.choice(options).target
    return t


def rename_bound(rng: random.Random, t: MuType, pool: Sequence[str] = ("p", "q", "r", "a", "b", "x")) -> MuType:
    """A random alpha-variant of ``t``; a new binder name is never one that
    would capture another variable of the body."""
    def go(t: MuType, env: dict[str, str]) -> MuType:
        match t:
            case Atom(name):
                return Atom(env.get(name, name))
            case Arrow(left, right):
                return Arrow(go(left, env), go(right, env))
            case Mu(binder, body):
                visible = {env.get(v, v) for v in free_vars(body) - {binder}}
                candidates = [n for n in pool if n not in visible]
                new = rng.choice(candidates) if candidates else fresh_name(binder, visible)
                return Mu(new, go(body, {**env, binder: new}))
        raise TypeError(t)

    return go(t, {})


def random_pair(rng: random.Random, max_len: int = 10) -> tuple[MuType, MuType]:
    """A pair of types of length ``<= max_len`` drawn from a mix of families:
    unrelated types, a type and one of its reducts, two reducts of a common
    type, and small perturbations of a type."""
    while True:
        family = rng.random()
        if family < 0.25:
            A, B = random_type(rng, max_len), random_type(rng, max_len)
        elif family < 0.5:
            A = random_type(rng, max_len)
            B = random_reduct(rng, A, rng.randint(1, 3))
        elif family < 0.75:
            C = random_type(rng, max_len - 1)
            A = random_reduct(rng, C, rng.randint(0, 2))
            B = random_reduct(rng, C, rng.randint(1, 3))
        else:
            A = random_type(rng, max_len)
            B = _perturb(rng, A)
        if rng.random() < 0.5:
            A, B = B, A
        if length(A) <= max_len and length(B) <= max_len:
            return A, B


def _perturb(rng: random.Random, t: MuType) -> MuType:
    match t:
        case Atom(name):
            return Atom("b" if name == "a" else "a") if rng.random() < 0.5 else Mu("w", t)
        case Arrow(left, right):
            if rng.random() < 0.5:
                return Arrow(_perturb(rng, left), right)
            return Arrow(left, _perturb(rng, right))
        case Mu(binder, body):
            if rng.random() < 0.3:
                return body if binder not in free_vars(body) else Mu(binder, _perturb(rng, body))
            return Mu(binder, _perturb(rng, body))
    raise TypeError(t)
