"""Finite racks, quandles and keis as explicit operation tables.

Elements are always the integers 0..n-1; named elements live in I/O layers
only.  A table classifies itself on first use (not-a-rack / rack / quandle /
kei) and caches orbit structure and the inverse operation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

from .errors import DomainError, NotARackError, ParseError

NOT_A_RACK = "not-a-rack"
RACK = "rack"
QUANDLE = "quandle"
KEI = "kei"


@dataclass(frozen=True)
class AxiomCheck:
    """Classification of a candidate table plus the first violated axiom.

    For a genuine rack, ``failed_axiom`` names the axiom that blocks the next
    stronger class (Q1 for racks that are not quandles, K2 for quandles that
    are not keis); for keis it is None.
    """

    rack_class: str
    failed_axiom: str | None
    witness: tuple[int, ...] | None

    def describe(self) -> str:
        if self.failed_axiom is None:
            return self.rack_class
        w = ",".join(map(str, self.witness or ()))
        return f"{self.rack_class}: axiom {self.failed_axiom} fails at ({w})"


@dataclass(frozen=True)
class RackTable:
    """An n-element binary operation table; table[a][b] encodes a*b."""

    size: int
    table: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n = self.size
        if n < 1:
            raise DomainError("table must have at least one element")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ParseError(f"table is not {n}x{n}")
        for a, row in enumerate(self.table):
            for b, v in enumerate(row):
                if not 0 <= v < n:
                    raise ParseError(
                        f"entry {a}*{b}={v} outside 0..{n - 1} (malformed table)"
                    )

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def _inverse(self) -> tuple[tuple[int, ...], ...]:
        # inverse[a][b] = c with c*b = a; requires bijective columns (R1)
        n = self.size
        inv = [[-1] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                inv[self.table[a][b]][b] = a
        if any(v < 0 for row in inv for v in row):
            raise NotARackError("columns are not bijections; no inverse operation")
        return tuple(tuple(row) for row in inv)

    def op_inv(self, a: int, b: int) -> int:
        """The unique c with c*b = a."""
        return self._inverse[a][b]

    @cached_property
    def check(self) -> AxiomCheck:
        return check_axioms(self.table)

    @property
    def rack_class(self) -> str:
        return self.check.rack_class

    @property
    def is_rack(self) -> bool:
        return self.check.rack_class != NOT_A_RACK

    @property
    def is_quandle(self) -> bool:
        return self.check.rack_class in (QUANDLE, KEI)

    @property
    def is_kei(self) -> bool:
        return self.check.rack_class == KEI

    def require_rack(self) -> None:
        if not self.is_rack:
            raise NotARackError(self.check.describe())

    def require_quandle(self) -> None:
        self.require_rack()
        if not self.is_quandle:
            raise DomainError(f"{self.label} is a rack but not a quandle")

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """Orbit partition under all right translations and their inverses."""
        self.require_rack()
        parent = list(range(self.size))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(self.size):
            for b in range(self.size):
                ra, rb = find(a), find(self.table[a][b])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for x in range(self.size):
            groups.setdefault(find(x), []).append(x)
        return tuple(tuple(sorted(g)) for g in sorted(groups.values()))

    @property
    def label(self) -> str:
        return self.name or f"rack({self.size})"

    def __iter__(self):
        return iter(range(self.size))

    def __len__(self) -> int:
        return self.size


def check_axioms(table: Sequence[Sequence[int]]) -> AxiomCheck:
    """Classify a candidate table, reporting the first violated axiom.

    Checks run cheapest-first: column bijectivity (R1), then right
    self-distributivity (R2), then idempotency (Q1), then involutivity (K2).
    The witness names the offending elements.
    """
    n = len(table)
    if n == 0:
        raise ParseError("empty table")
    for a, row in enumerate(table):
        if len(row) != n:
            raise ParseError(f"row {a} has {len(row)} entries, expected {n}")
        for b, v in enumerate(row):
            if not 0 <= v < n:
                raise ParseError(f"entry {a}*{b}={v} outside 0..{n - 1} (malformed table)")

    for b in range(n):
        seen: dict[int, int] = {}
        for a in range(n):
            v = table[a][b]
            if v in seen:
                return AxiomCheck(NOT_A_RACK, "R1", (b, seen[v], a))
            seen[v] = a

    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            row_ab = table[ab]
            for c in range(n):
                if row_ab[c] != table[table[a][c]][table[b][c]]:
                    return AxiomCheck(NOT_A_RACK, "R2", (a, b, c))

    for a in range(n):
        if table[a][a] != a:
            return AxiomCheck(RACK, "Q1", (a,))

    for a in range(n):
        for b in range(n):
            if table[table[a][b]][b] != a:
                return AxiomCheck(QUANDLE, "K2", (a, b))

    return AxiomCheck(KEI, None, None)


# --- constructors -------------------------------------------------------------


def make_trivial(n: int) -> RackTable:
    """The trivial kei on n elements: x*y = x."""
    if n < 1:
        raise DomainError("trivial kei needs at least one element")
    return RackTable(n, tuple(tuple(a for _ in range(n)) for a in range(n)), f"trivial:{n}")


def make_dihedral(n: int) -> RackTable:
    """The dihedral kei R_n: i*j = 2j - i (mod n)."""
    if n < 1:
        raise DomainError("dihedral kei needs at least one element")
    return RackTable(
        n,
        tuple(tuple((2 * j - i) % n for j in range(n)) for i in range(n)),
        f"dihedral:{n}",
    )


def _poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(p: list[int], q: list[int], m: int) -> list[int]:
    """Remainder of p modulo a monic q, coefficients in Z_m, constant first."""
    p = [c % m for c in p]
    deg_q = len(q) - 1
    while len(_poly_trim(p)) > deg_q:
        lead = p[-1]
        shift = len(p) - 1 - deg_q
        for i, c in enumerate(q):
            p[shift + i] = (p[shift + i] - lead * c) % m
        _poly_trim(p)
    p = p + [0] * (deg_q - len(p))
    return [c % m for c in p[:deg_q]]


def _poly_mul(a: list[int], b: list[int], q: list[int], m: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1 or 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % m
    return _poly_mod(out, q, m)


def make_alexander(
    modulus: int, quotient_poly: Sequence[int], t_poly: Sequence[int]
) -> RackTable:
    """The Alexander quandle Z_modulus[T]/(quotient_poly) with a*b = Ta + (1-T)b.

    Polynomials are coefficient lists, constant term first.  Elements are the
    coefficient vectors of the quotient ring, enumerated lexicographically
    (leading coordinate most significant), so tables are reproducible.
    """
    if modulus < 1:
        raise DomainError("modulus must be positive")
    m = modulus
    if m == 1:
        return RackTable(1, ((0,),), "alexander:1")
    q = _poly_trim([c % m for c in quotient_poly])
    if not q:
        raise DomainError("quotient polynomial must be nonzero")
    # Normalize the quotient to be monic; its leading coefficient must be a unit.
    lead = q[-1]
    try:
        inv_lead = pow(lead, -1, m)
    except ValueError:
        raise DomainError("leading coefficient of the quotient must be a unit") from None
    q = [(c * inv_lead) % m for c in q]
    deg = len(q) - 1
    if deg < 1:
        raise DomainError("quotient polynomial must have degree >= 1")

    t = _poly_mod([c % m for c in t_poly], q, m)
    one = _poly_mod([1], q, m)
    one_minus_t = [(a - b) % m for a, b in zip(one, t)]

    # Element i <-> coefficient vector, leading coordinate most significant.
    n = m**deg

    def vec(i: int) -> list[int]:
        digits = []
        for _ in range(deg):
            digits.append(i % m)
            i //= m
        return digits[::-1]

    def idx(v: Sequence[int]) -> int:
        out = 0
        for c in v:
            out = out * m + c % m
        return out

    elements = [vec(i) for i in range(n)]
    # T must act bijectively, otherwise R1 fails.
    t_images = {idx(_poly_mul(e, t, q, m)) for e in elements}
    if len(t_images) != n:
        raise DomainError("T must be a unit in the quotient ring")

    rows = []
    for a in elements:
        ta = _poly_mul(a, t, q, m)
        row = []
        for b in elements:
            sb = _poly_mul(b, one_minus_t, q, m)
            row.append(idx([(x + y) % m for x, y in zip(ta, sb)]))
        rows.append(tuple(row))
    return RackTable(n, tuple(rows), f"alexander:{m}:deg{deg}")


def _validate_group(table: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Check a multiplication table is a group; return (identity, inverses)."""
    n = len(table)
    for row in table:
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise ParseError("malformed group table")
    identity = next(
        (e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))),
        None,
    )
    if identity is None:
        raise DomainError("group table has no identity")
    inverse = [-1] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == identity and table[b][a] == identity:
                inverse[a] = b
                break
        else:
            raise DomainError(f"element {a} has no inverse")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise DomainError(f"group table not associative at ({a},{b},{c})")
    return identity, inverse


def make_conjugation(group_table: Sequence[Sequence[int]], exponent: int = 1) -> RackTable:
    """The n-fold conjugation quandle of a finite group: a*b = b^-n a b^n."""
    identity, inverse = _validate_group(group_table)
    n = len(group_table)

    def power(g: int, e: int) -> int:
        if e < 0:
            g, e = inverse[g], -e
        out = identity
        for _ in range(e):
            out = group_table[out][g]
        return out

    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            be = power(b, exponent)
            bi = inverse[be]
            row.append(group_table[group_table[bi][a]][be])
        rows.append(tuple(row))
    return RackTable(n, tuple(rows), f"conj(order {n}, exp {exponent})")


# --- word calculus ------------------------------------------------------------


@dataclass(frozen=True)
class RackWord:
    """A base symbol acted on by a word of right translations.

    ``letters`` is a sequence of (symbol, exponent) pairs with exponents +-1;
    an empty word denotes the base itself.
    """

    base: Any
    letters: tuple[tuple[Any, int], ...] = ()

    def __post_init__(self) -> None:
        for _, e in self.letters:
            if e not in (1, -1):
                raise DomainError("word exponents must be +1 or -1")


def evaluate_word(X: RackTable, u: int, word: Iterable) -> int:
    """Apply a word of right translations S_x^{+-1} to u, left to right.

    ``word`` may be a RackWord over elements, or an iterable whose items are
    elements (exponent +1) or (element, exponent) pairs.
    """
    X.require_rack()
    letters = word.letters if isinstance(word, RackWord) else word
    for item in letters:
        x, e = item if isinstance(item, tuple) else (item, 1)
        u = X.table[u][x] if e == 1 else X.op_inv(u, x)
    return u


def evaluate_tree(X: RackTable, tree, assignment: Mapping[Any, int]) -> int:
    """Evaluate a *-expression tree; leaves are symbols mapped by assignment."""
    if isinstance(tree, tuple):
        left, right = tree
        return X.table[evaluate_tree(X, left, assignment)][
            evaluate_tree(X, right, assignment)
        ]
    return assignment[tree]


def kei_normalize(tree) -> RackWord:
    """Left-normal form of a *-expression over kei generators.

    Trees are nested 2-tuples with symbol leaves.  The result is a flat word
    x1^{x2 x3 ...} over the same symbols that evaluates equally in every kei.
    The rewriting behind the recursion is x*(y*z) -> ((x*z)*y)*z together with
    the cancellation (x*y)*y -> x; each application of the first rule strictly
    decreases the total right-spine depth of the leaves, which is why the
    normal form exists.
    """
    base, letters = _flatten_tree(tree)
    reduced: list[Any] = []
    for x in letters:
        if reduced and reduced[-1] == x:
            reduced.pop()
        else:
            reduced.append(x)
    return RackWord(base, tuple((x, 1) for x in reduced))


def _flatten_tree(tree) -> tuple[Any, list[Any]]:
    if not isinstance(tree, tuple):
        return tree, []
    left, right = tree
    a, w = _flatten_tree(left)
    b, v = _flatten_tree(right)
    # a^w * b^v  =  a^{w  v_k..v_1  b  v_1..v_k}
    return a, w + v[::-1] + [b] + v


def evaluate_rack_word(X: RackTable, word: RackWord, assignment: Mapping[Any, int]) -> int:
    """Evaluate a symbolic RackWord under a leaf assignment."""
    u = assignment[word.base]
    return evaluate_word(X, u, [(assignment[x], e) for x, e in word.letters])


# --- associated group ---------------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[tuple[str, int], ...], ...]

    def __post_init__(self) -> None:
        gens = set(self.generators)
        for rel in self.relators:
            for g, _ in rel:
                if g not in gens:
                    raise DomainError(f"relator uses unknown generator {g}")


def associated_group_presentation(X: RackTable) -> GroupPresentation:
    """Presentation of the associated group: x*y read as y^-1 x y.

    One generator per element and, for every ordered pair (x, y), the relator
    (x*y) y^-1 x^-1 y.
    """
    X.require_rack()
    gens = tuple(f"x{i}" for i in range(X.size))
    relators = []
    for x in range(X.size):
        for y in range(X.size):
            xy = X.table[x][y]
            relators.append(
                ((gens[xy], 1), (gens[y], -1), (gens[x], -1), (gens[y], 1))
            )
    return GroupPresentation(gens, tuple(relators))


# --- abelian extensions -------------------------------------------------------


def abelian_extension(X: RackTable, d: int, phi) -> RackTable:
    """The extension table on Z_d x X twisted by a degree-2 cochain.

    (g1, x1) * (g2, x2) = (g1 + phi(x1, x2), x1*x2); element (g, x) is encoded
    as g*|X| + x.  No cocycle condition is assumed: feeding a non-cocycle
    simply produces a table whose classification reports the broken axiom.
    """
    if d < 1:
        raise DomainError("extension modulus must be positive")
    if phi.degree != 2:
        raise DomainError("extension needs a degree-2 cochain")
    if phi.modulus != d:
        raise DomainError("cochain modulus does not match extension modulus")
    n = X.size
    rows = []
    for g1 in range(d):
        for x1 in range(n):
            row = []
            for g2 in range(d):
                for x2 in range(n):
                    g = (g1 + phi.value((x1, x2))) % d
                    row.append(g * n + X.table[x1][x2])
            rows.append(tuple(row))
    return RackTable(d * n, tuple(rows), f"E({X.label},Z_{d})")


# --- isomorphism search (small tables only) ------------------------------------


def _profile(X: RackTable, a: int) -> tuple:
    fixed = sum(1 for b in range(X.size) if X.table[a][b] == a)
    fixes = sum(1 for b in range(X.size) if X.table[b][a] == b)
    idem = X.table[a][a] == a
    return (fixed, fixes, idem)


def find_isomorphism(X: RackTable, Y: RackTable) -> tuple[int, ...] | None:
    """Brute-force isomorphism X -> Y with degree-invariant pruning.

    Intended for tables with at most ~8 elements; returns the image tuple or
    None.
    """
    if X.size != Y.size:
        return None
    n = X.size
    px = [_profile(X, a) for a in range(n)]
    py = [_profile(Y, a) for a in range(n)]
    if sorted(px) != sorted(py):
        return None
    candidates = [[b for b in range(n) if py[b] == px[a]] for a in range(n)]

    def extend(mapping: list[int], used: set[int]) -> tuple[int, ...] | None:
        a = len(mapping)
        if a == n:
            return tuple(mapping)
        for b in candidates[a]:
            if b in used:
                continue
            mapping.append(b)
            used.add(b)
            ok = True
            for x in range(a + 1):
                if not ok:
                    break
                for y in range(a + 1):
                    xy = X.table[x][y]
                    if xy <= a and Y.table[mapping[x]][mapping[y]] != mapping[xy]:
                        ok = False
                        break
            if ok:
                result = extend(mapping, used)
                if result is not None:
                    return result
            mapping.pop()
            used.remove(b)
        return None

    return extend([], set())


# --- text format ---------------------------------------------------------------


def parse_rack_table(text: str, name: str | None = None) -> RackTable:
    """Parse the plain table format: a 'rack <n>' header then n rows of n ints."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty rack table")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "rack":
        raise ParseError("expected header 'rack <n>'")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad size {head[1]!r} in rack header") from None
    if n < 1:
        raise ParseError("rack size must be positive")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        try:
            row = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(f"non-integer table entry in line {line!r}") from None
        if len(row) != n:
            raise ParseError(f"row {line!r} has {len(row)} entries, expected {n}")
        rows.append(row)
    return RackTable(n, tuple(rows), name)


def format_rack_table(X: RackTable) -> str:
    lines = [f"rack {X.size}"]
    for row in X.table:
        lines.append(" ".join(map(str, row)))
    return "\n".join(lines) + "\n"


def symmetric_group_table(m: int) -> list[list[int]]:
    """Multiplication table of S_m with elements in lexicographic order.

    Composition acts left-to-right: (p . q)(i) = q(p(i)); handy for building
    conjugation quandles in tests.
    """
    perms = sorted(itertools.permutations(range(m)))
    index = {p: i for i, p in enumerate(perms)}
    return [
        [index[tuple(q[p[i]] for i in range(m))] for q in perms]
        for p in perms
    ]
