"""Reader for user-supplied Hodge integral tables.

One record per line::

    g; a_1,...,a_n; k_1,k_2,...; p/q

meaning  int_{M_{g,n}} prod psi_i^{a_i} prod_j c_{k_j}(E) = p/q.  The
Chern-class list may be empty; ``#`` starts a comment.  For genus 0 and 1
lookups fall back to the native integrals.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import InvalidArgumentError
from .exact import format_rational, to_rational


class HodgeTable:
    def __init__(self, records: dict | None = None):
        self.records: dict[tuple, Fraction] = {}
        for key, value in (records or {}).items():
            self.add(*key, value)

    @staticmethod
    def normalize(g: int, a: Iterable[int], ks: Iterable[int]) -> tuple:
        return (int(g), tuple(sorted(int(x) for x in a)), tuple(sorted(int(k) for k in ks if int(k) != 0)))

    def add(self, g, a, ks, value):
        key = self.normalize(g, a, ks)
        value = to_rational(value)
        old = self.records.get(key)
        if old is not None and old != value:
            raise InvalidArgumentError(f"conflicting Hodge records for {self.format_key(key)}")
        self.records[key] = value

    def get(self, g, a, ks=()) -> Fraction | None:
        key = self.normalize(g, a, ks)
        if key in self.records:
            return self.records[key]
        if g <= 1:
            return _native(*key)
        return None

    def __len__(self):
        return len(self.records)

    @staticmethod
    def format_key(key: tuple) -> str:
        g, a, ks = key
        return f"{g}; {','.join(map(str, a))}; {','.join(map(str, ks))}"

    @classmethod
    def parse(cls, text: str) -> "HodgeTable":
        table = cls()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = [f.strip() for f in line.split(";")]
            if len(fields) != 4:
                raise InvalidArgumentError(f"line {lineno}: expected 4 ';'-separated fields")
            try:
                g = int(fields[0])
                a = [int(x) for x in fields[1].split(",") if x.strip()]
                ks = [int(x) for x in fields[2].split(",") if x.strip()]
            except ValueError as exc:
                raise InvalidArgumentError(f"line {lineno}: {exc}") from exc
            table.add(g, a, ks, fields[3])
        return table

    @classmethod
    def load(cls, path) -> "HodgeTable":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        return "".join(
            f"{self.format_key(k)}; {format_rational(v)}\n" for k, v in sorted(self.records.items())
        )


def _native(g, a, ks):
    from .integrals import integral_g0, integral_g1, integral_g1_lambda

    if g == 0:
        return integral_g0(a) if not ks and len(a) >= 3 else None
    if not a:
        return None
    if not ks:
        return integral_g1(a)
    if ks == (1,):
        return integral_g1_lambda(a)
    return None
