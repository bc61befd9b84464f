"""Built-in algebra families, the .lie file format, and the corpus.

Spec strings name algebras:

    abelian:n                  zero bracket, dimension n
    heisenberg:k               dimension 2k+1, [x_j, y_j] = z
    filiform:n                 [e_1, e_i] = e_{i+1} for 2 <= i <= n-1
    freenil:d,c                free nilpotent, rank d, class c
    dirsum:<spec>+<spec>       direct sum of two or more non-sum specs
    file:<path>                .lie file on disk

The .lie text format is line-oriented, with ``#`` starting a comment:

    algebra <name>
    dim <n>
    bracket <i> <j> -> <c1>*<k1> [<c2>*<k2> ...]   # 1-based, i < j
    end

Unlisted pairs bracket to zero; coefficients are rationals written as
``p`` or ``p/q``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .free_lie import free_nilpotent
from .lie_core import LieAlgebra, direct_sum

DIM_GUARD = 64


class SpecError(ValueError):
    """Malformed or out-of-range algebra spec string."""


class ParseError(ValueError):
    """Syntax or consistency error in a .lie file, with line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


# -- families -----------------------------------------------------------------

def abelian(n: int) -> LieAlgebra:
    if not 0 <= n <= DIM_GUARD:
        raise SpecError(f"abelian dimension {n} outside 0..{DIM_GUARD}")
    return LieAlgebra(n, {}, name=f"abelian:{n}")


def heisenberg(k: int) -> LieAlgebra:
    """Dimension 2k+1: [e_j, e_{k+j}] = e_{2k} for j = 0..k-1."""
    if k < 1 or 2 * k + 1 > DIM_GUARD:
        raise SpecError(f"heisenberg parameter {k} outside range")
    table = {(j, k + j): {2 * k: Fraction(1)} for j in range(k)}
    return LieAlgebra(2 * k + 1, table, name=f"heisenberg:{k}")


def filiform(n: int) -> LieAlgebra:
    """Maximal-class model: [e_0, e_i] = e_{i+1} for i = 1..n-2."""
    if not 3 <= n <= DIM_GUARD:
        raise SpecError(f"filiform dimension {n} outside 3..{DIM_GUARD}")
    table = {(0, i): {i + 1: Fraction(1)} for i in range(1, n - 1)}
    return LieAlgebra(n, table, name=f"filiform:{n}")


def _witt_dimension(d: int, k: int) -> int:
    """Number of Lyndon words of length k over d letters (necklace count)."""
    total = 0
    for e in range(1, k + 1):
        if k % e:
            continue
        total += _moebius(k // e) * d ** e
    return total // k


def _moebius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def freenil(d: int, c: int) -> LieAlgebra:
    if d < 1 or c < 1:
        raise SpecError("freenil needs d >= 1 and c >= 1")
    total = sum(_witt_dimension(d, k) for k in range(1, c + 1))
    if total > DIM_GUARD:
        raise SpecError(f"freenil:{d},{c} has dimension {total} > {DIM_GUARD}")
    return free_nilpotent(d, c)


# -- spec strings ---------------------------------------------------------------

def _int_param(text: str, spec: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpecError(f"bad integer {text!r} in spec {spec!r}") from None


def build(spec: str) -> LieAlgebra:
    """Construct the algebra named by a spec string."""
    spec = spec.strip()
    if spec.startswith("file:"):
        # never cached: the file may change between calls
        return load_file(spec[len("file:"):])
    return _build_cached(spec)


@lru_cache(maxsize=None)
def _build_cached(spec: str) -> LieAlgebra:
    head, sep, rest = spec.partition(":")
    if not sep:
        raise SpecError(f"spec {spec!r} is missing ':'")
    if head == "abelian":
        return abelian(_int_param(rest, spec))
    if head == "heisenberg":
        return heisenberg(_int_param(rest, spec))
    if head == "filiform":
        return filiform(_int_param(rest, spec))
    if head == "freenil":
        d, sep, c = rest.partition(",")
        if not sep:
            raise SpecError(f"freenil spec {spec!r} needs d,c")
        return freenil(_int_param(d, spec), _int_param(c, spec))
    if head == "dirsum":
        parts = rest.split("+")
        if len(parts) < 2:
            raise SpecError(f"dirsum spec {spec!r} needs at least two summands")
        total = build(parts[0])
        for part in parts[1:]:
            total = direct_sum(total, build(part))
        return LieAlgebra(total.dim, total.table, name=spec)
    raise SpecError(f"unknown family {head!r} in spec {spec!r}")


# -- corpus ---------------------------------------------------------------------

_SUM_COMPONENTS = (
    "abelian:1", "abelian:2", "abelian:3", "abelian:4", "abelian:5",
    "heisenberg:1", "heisenberg:2",
    "filiform:3", "filiform:4", "filiform:5",
    "freenil:2,2", "freenil:2,3", "freenil:3,2",
)


@dataclass(frozen=True)
class CorpusManifest:
    """Named spec list; deterministic (name-sorted) order."""

    specs: tuple[str, ...]

    def algebras(self) -> list[LieAlgebra]:
        return [build(spec) for spec in self.specs]


def default_manifest(max_dim: int | None = None) -> CorpusManifest:
    """Family members plus pairwise direct sums of total dimension <= 8.

    freenil:3,3 (dimension 14) is included deliberately even though every
    other member stays within dimension 8.  Sums of two abelian algebras
    are skipped as duplicates of plain abelian members.  ``max_dim``
    filters the final list by dimension.
    """
    specs = [f"abelian:{n}" for n in range(1, 9)]
    specs += [f"heisenberg:{k}" for k in (1, 2, 3)]
    specs += [f"filiform:{n}" for n in range(3, 8)]
    specs += ["freenil:2,2", "freenil:2,3", "freenil:2,4",
              "freenil:3,2", "freenil:3,3"]
    for a, b in itertools.combinations_with_replacement(_SUM_COMPONENTS, 2):
        if a.startswith("abelian") and b.startswith("abelian"):
            continue
        if build(a).dim + build(b).dim <= 8:
            specs.append(f"dirsum:{a}+{b}")
    if max_dim is not None:
        specs = [s for s in specs if build(s).dim <= max_dim]
    return CorpusManifest(specs=tuple(sorted(specs)))


# -- .lie files -------------------------------------------------------------------

def parse_file(text: str) -> LieAlgebra:
    """Parse the .lie format; raises ParseError with 1-based line numbers."""
    name: str | None = None
    dim: int | None = None
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    ended = False
    end_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError(lineno, f"content after 'end' (line {end_line})")
        fields = line.split()
        keyword = fields[0]
        if keyword == "algebra":
            if name is not None:
                raise ParseError(lineno, "duplicate 'algebra' line")
            if len(fields) < 2:
                raise ParseError(lineno, "'algebra' needs a name")
            name = line.split(None, 1)[1]
        elif keyword == "dim":
            if name is None:
                raise ParseError(lineno, "'dim' before 'algebra'")
            if dim is not None:
                raise ParseError(lineno, "duplicate 'dim' line")
            if len(fields) != 2 or not fields[1].isdigit():
                raise ParseError(lineno, "'dim' needs one nonnegative integer")
            dim = int(fields[1])
            if dim > DIM_GUARD:
                raise ParseError(lineno, f"dimension {dim} exceeds guard {DIM_GUARD}")
        elif keyword == "bracket":
            if dim is None:
                raise ParseError(lineno, "'bracket' before 'dim'")
            table_entry = _parse_bracket(fields, lineno, dim)
            pair, entry = table_entry
            if pair in table:
                raise ParseError(lineno, f"duplicate bracket pair {pair[0] + 1} {pair[1] + 1}")
            table[pair] = entry
        elif keyword == "end":
            if dim is None:
                raise ParseError(lineno, "'end' before 'dim'")
            ended = True
            end_line = lineno
        else:
            raise ParseError(lineno, f"unknown keyword {keyword!r}")
    if name is None or dim is None:
        raise ParseError(len(text.splitlines()) + 1, "missing 'algebra'/'dim' header")
    if not ended:
        raise ParseError(len(text.splitlines()) + 1, "missing 'end'")
    return LieAlgebra(dim, table, name=name)


def _parse_bracket(fields: list[str], lineno: int,
                   dim: int) -> tuple[tuple[int, int], dict[int, Fraction]]:
    if len(fields) < 5 or fields[3] != "->":
        raise ParseError(lineno, "expected 'bracket <i> <j> -> <c>*<k> ...'")
    try:
        i, j = int(fields[1]), int(fields[2])
    except ValueError:
        raise ParseError(lineno, "bracket indices must be integers") from None
    if not i < j:
        raise ParseError(lineno, f"bracket pair needs i < j, got {i} {j}")
    for index in (i, j):
        if not 1 <= index <= dim:
            raise ParseError(lineno, f"undeclared basis index {index} (dim {dim})")
    entry: dict[int, Fraction] = {}
    for term in fields[4:]:
        coeff_text, sep, target_text = term.partition("*")
        if not sep:
            raise ParseError(lineno, f"term {term!r} needs the form <c>*<k>")
        try:
            coeff = Fraction(coeff_text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(lineno, f"non-rational coefficient {coeff_text!r}") from None
        try:
            target = int(target_text)
        except ValueError:
            raise ParseError(lineno, f"bad basis index {target_text!r}") from None
        if not 1 <= target <= dim:
            raise ParseError(lineno, f"undeclared basis index {target} (dim {dim})")
        if target - 1 in entry:
            raise ParseError(lineno, f"repeated basis index {target} in one bracket")
        if coeff:
            entry[target - 1] = coeff
    return (i - 1, j - 1), entry


def serialize(L: LieAlgebra) -> str:
    """Emit the .lie format; parse(serialize(L)) equals L structurally."""
    lines = [f"algebra {L.name}", f"dim {L.dim}"]
    for (i, j), entry in sorted(L.table.items()):
        terms = " ".join(f"{coeff}*{k + 1}" for k, coeff in sorted(entry.items()))
        lines.append(f"bracket {i + 1} {j + 1} -> {terms}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def load_file(path: str) -> LieAlgebra:
    """Read and parse a .lie file from disk."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from None
    return parse_file(text)
