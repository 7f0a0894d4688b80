"""Symbolic G-spaces of sign configurations on clopen k-partitions.

A configuration assigns +1 or -1 to every ordered k-partition.  There are
infinitely many such partitions, so configurations are rules evaluated on
demand and memoised.  Tables are sign functions on the symmetric group S_k,
and table-valued configurations live on unordered k-partitions.

Permutation products are compositions, ``(p * q)(i) = p(q(i))``, and a
permutation acts on an ordered partition by ``sigma(B) = (B_sigma(1), ...)``.
With these conventions the cocycle is ``rho(gh) = rho(g) * rho(h, g^-1 b)``
and the bullet action evaluates the table at ``sigma * rho``.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .cantor import (
    ContractError,
    OrderedPartition,
    Permutation,
    PrefixMap,
    UnorderedPartition,
    apply_partition,
    apply_unordered,
    invert,
)
from .chains import ChainApprox, act_chain, induced_order, theta


@dataclass(frozen=True)
class Table:
    """A function S_k -> {+1, -1}."""

    k: int
    values: tuple[int, ...]  # indexed like Permutation.all(k)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(_perms(self.k)):
            raise ContractError(f"a table for S_{self.k} needs {len(_perms(self.k))} values")
        if any(v not in (1, -1) for v in self.values):
            raise ContractError("table values must be +1 or -1")

    @classmethod
    def from_mapping(cls, k: int, mapping: Mapping[Permutation, int]) -> "Table":
        return cls(k, tuple(mapping[p] for p in _perms(k)))

    @classmethod
    def constant(cls, k: int, value: int = 1) -> "Table":
        return cls(k, (value,) * len(_perms(k)))

    @classmethod
    def all(cls, k: int) -> list["Table"]:
        n = len(_perms(k))
        return [cls(k, tuple(1 if (i >> j) & 1 == 0 else -1 for j in range(n))) for i in range(2 ** n)]

    @classmethod
    def random(cls, rng, k: int) -> "Table":
        return cls(k, tuple(rng.choice((1, -1)) for _ in _perms(k)))

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> "Table":
        """Parse ``"12:+1,21:-1"``; ``id`` and ``swap`` name the elements of S_2."""
        entries = {}
        for item in text.split(","):
            name, value = item.split(":")
            name = name.strip()
            if name == "id":
                perm = Permutation.identity(k or 2)
            elif name == "swap":
                perm = Permutation((2, 1))
            else:
                perm = Permutation.parse(name)
            entries[perm] = int(value)
        degrees = {p.k for p in entries}
        if len(degrees) != 1:
            raise ContractError("table entries mix permutation degrees")
        return cls.from_mapping(degrees.pop(), entries)

    def __call__(self, sigma: Permutation) -> int:
        return self.values[_perm_index(self.k)[sigma]]

    def items(self):
        return zip(_perms(self.k), self.values)

    def to_json(self) -> dict[str, int]:
        return {str(p): v for p, v in self.items()}

    def __str__(self):
        return ",".join(f"{p}:{v:+d}" for p, v in self.items())


_PERMS: dict[int, list[Permutation]] = {}
_INDEX: dict[int, dict[Permutation, int]] = {}


def _perms(k: int) -> list[Permutation]:
    if k not in _PERMS:
        _PERMS[k] = Permutation.all(k)
    return _PERMS[k]


def _perm_index(k: int) -> dict[Permutation, int]:
    if k not in _INDEX:
        _INDEX[k] = {p: i for i, p in enumerate(_perms(k))}
    return _INDEX[k]


# -- configurations ---------------------------------------------------------


@dataclass
class SymbolConfig:
    """An element of Omega_k given by a rule on ordered k-partitions."""

    k: int
    rule: Callable[[OrderedPartition], int]
    tag: str = "rule"
    _memo: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __call__(self, beta: OrderedPartition) -> int:
        if len(beta) != self.k:
            raise ContractError(f"configuration on {self.k}-partitions evaluated at a {len(beta)}-partition")
        try:
            return self._memo[beta]
        except KeyError:
            pass
        value = self.rule(beta)
        if value not in (1, -1):
            raise ContractError(f"rule returned {value!r}, expected +1 or -1")
        with self._lock:
            self._memo.setdefault(beta, value)
        return value

    def sample(self, partitions) -> list[tuple[list, int]]:
        return [(b.to_json(), self(b)) for b in partitions]

    def dumps_sample(self, partitions) -> str:
        return json.dumps({"tag": self.tag, "k": self.k, "values": self.sample(partitions)}, sort_keys=True)

    @classmethod
    def from_table(cls, k: int, table: Mapping[OrderedPartition, int], default: int | None = None, tag: str = "table"):
        """Finite configuration; evaluation off the table raises unless a default is given."""
        frozen = dict(table)

        def rule(beta):
            if beta in frozen:
                return frozen[beta]
            if default is None:
                raise ContractError(f"{beta} is outside the configuration's table")
            return default

        return cls(k, rule, tag)


def act_omega(g: PrefixMap, omega: SymbolConfig) -> SymbolConfig:
    """(g omega)(beta) = omega(g^-1 beta)."""
    g_inv = invert(g)
    return SymbolConfig(omega.k, lambda beta: omega(apply_partition(g_inv, beta)), f"{g}·{omega.tag}")


def phi_T(table: Table, c: ChainApprox, beta: OrderedPartition) -> int:
    if len(beta) != table.k:
        raise ContractError(f"table on S_{table.k} applied to a {len(beta)}-partition")
    return table(theta(c, beta))


def phi_config(table: Table, c: ChainApprox) -> SymbolConfig:
    """The configuration phi_T(c) in Omega_k."""
    return SymbolConfig(table.k, lambda beta: phi_T(table, c, beta), f"phi_T({table}, {c})")


# -- table-valued configurations -------------------------------------------


@dataclass
class TildeConfig:
    """An element of Omega~_k: a table for every unordered k-partition."""

    k: int
    value: Callable[[UnorderedPartition, Permutation], int]
    tag: str = "tilde"

    def __call__(self, beta: UnorderedPartition, sigma: Permutation) -> int:
        if len(beta) != self.k or sigma.k != self.k:
            raise ContractError("size mismatch")
        return self.value(beta, sigma)

    def table(self, beta: UnorderedPartition) -> Table:
        return Table(self.k, tuple(self(beta, s) for s in _perms(self.k)))


def tilde(omega: SymbolConfig, c: ChainApprox) -> TildeConfig:
    """pi_c(omega): value at (beta~, sigma) is omega(sigma^-1 t*_c(beta~))."""

    def value(beta: UnorderedPartition, sigma: Permutation) -> int:
        return omega(sigma.inverse().act(induced_order(c, beta)))

    return TildeConfig(omega.k, value, f"pi_c({omega.tag})")


def rho(c: ChainApprox, g: PrefixMap, beta: UnorderedPartition) -> Permutation:
    """The cocycle: the permutation with rho^-1 t*_c(g^-1 beta~) = g^-1 t*_c(beta~)."""
    g_inv = invert(g)
    source = induced_order(c, apply_unordered(g_inv, beta))
    target = apply_partition(g_inv, induced_order(c, beta))
    index = {p: i for i, p in enumerate(source, start=1)}
    pi = Permutation(tuple(index[p] for p in target))  # pi(source) == target
    return pi.inverse()


def bullet_eval(c: ChainApprox, g: PrefixMap, omega_t: TildeConfig, beta: UnorderedPartition, sigma: Permutation) -> int:
    """(g •_c omega~)(beta~)(sigma) = omega~(g^-1 beta~)(sigma * rho_c(g, beta~))."""
    r = rho(c, g, beta)
    return omega_t(apply_unordered(invert(g), beta), sigma * r)


def natural_tilde_eval(g: PrefixMap, omega_t: TildeConfig, beta: UnorderedPartition, sigma: Permutation) -> int:
    """The plain action (g · omega~)(beta~)(sigma) = omega~(g^-1 beta~)(sigma); distinct from bullet."""
    return omega_t(apply_unordered(invert(g), beta), sigma)


def bullet(c: ChainApprox, g: PrefixMap, omega_t: TildeConfig) -> TildeConfig:
    return TildeConfig(omega_t.k, lambda b, s: bullet_eval(c, g, omega_t, b, s), f"{g}•{omega_t.tag}")


def equivariance_pair(table: Table, g: PrefixMap, c: ChainApprox, beta: OrderedPartition) -> tuple[int, int]:
    """Both sides of phi_T(gc)(beta) = (g phi_T(c))(beta), computed separately."""
    left = phi_T(table, act_chain(g, c), beta)
    right = phi_T(table, c, apply_partition(invert(g), beta))
    return left, right
