"""Quivers, dimension vectors, Ringel forms, and the tripling construction
with its cubic potential, cuts and cyclic derivatives.

A quiver is a finite directed multigraph with vertices 0..n-1 and named
arrows; loops and parallel arrows are allowed.  Paths and potential words are
stored left-to-right: the word (a, b) means "a then b", so a composes when
the target of a equals the source of b.
"""

from __future__ import annotations

from dataclasses import dataclass


class ParseError(Exception):
    """Malformed quiver file; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class NotATripledQuiver(Exception):
    """The arrow naming discipline of a tripled quiver is absent."""


class ContainsLoopArrow(Exception):
    """A cut may not contain any of the added loops w@i."""


class IdentityViolated(Exception):
    """The dimension-shift identity l' = 0 failed; signals a bug."""


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    dst: int


@dataclass(frozen=True)
class Quiver:
    n_vertices: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        names = set()
        for a in self.arrows:
            if not (0 <= a.src < self.n_vertices and 0 <= a.dst < self.n_vertices):
                raise ValueError(f"arrow {a.name} has a dangling endpoint")
            if a.name in names:
                raise ValueError(f"duplicate arrow id {a.name}")
            names.add(a.name)

    @property
    def vertices(self):
        return range(self.n_vertices)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)


def make_quiver(n_vertices: int, arrows) -> Quiver:
    return Quiver(n_vertices, tuple(Arrow(n, s, t) for n, s, t in arrows))


# -- file format ----------------------------------------------------------------


def parse_quiver(text: str) -> Quiver:
    """Parse the one-declaration-per-line quiver format.

    ::

        # comment
        vertices: <count>
        arrow <id> <src> <dst>
    """
    n_vertices = None
    arrows = []
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "vertices:":
            if n_vertices is not None:
                raise ParseError(line_no, "duplicate vertices declaration")
            if len(tokens) != 2:
                raise ParseError(line_no, "expected: vertices: <count>")
            try:
                n_vertices = int(tokens[1])
            except ValueError:
                raise ParseError(line_no, f"bad vertex count {tokens[1]!r}") from None
            if n_vertices < 0:
                raise ParseError(line_no, "vertex count must be nonnegative")
        elif tokens[0] == "arrow":
            if n_vertices is None:
                raise ParseError(line_no, "arrow before vertices declaration")
            if len(tokens) != 4:
                raise ParseError(line_no, "expected: arrow <id> <src> <dst>")
            name = tokens[1]
            if name in seen:
                raise ParseError(line_no, f"duplicate arrow id {name!r}")
            try:
                src, dst = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise ParseError(line_no, "arrow endpoints must be integers") from None
            if not (0 <= src < n_vertices and 0 <= dst < n_vertices):
                raise ParseError(line_no, f"arrow {name!r} has a dangling endpoint")
            seen.add(name)
            arrows.append(Arrow(name, src, dst))
        else:
            raise ParseError(line_no, f"unknown keyword {tokens[0]!r}")
    if n_vertices is None:
        raise ParseError(0, "missing vertices declaration")
    return Quiver(n_vertices, tuple(arrows))


def serialize_quiver(q: Quiver) -> str:
    lines = [f"vertices: {q.n_vertices}"]
    lines.extend(f"arrow {a.name} {a.src} {a.dst}" for a in q.arrows)
    return "\n".join(lines) + "\n"


# -- bilinear forms ---------------------------------------------------------------


def check_dimension_vector(q: Quiver, gamma) -> tuple[int, ...]:
    gamma = tuple(int(c) for c in gamma)
    if len(gamma) != q.n_vertices:
        raise ValueError(
            f"dimension vector has {len(gamma)} entries for {q.n_vertices} vertices"
        )
    if any(c < 0 for c in gamma):
        raise ValueError("dimension vector must be componentwise nonnegative")
    return gamma


def ringel_form(q: Quiver, gamma, gamma2) -> int:
    """Euler form: sum of vertex products minus sum of arrow products."""
    total = sum(gamma[i] * gamma2[i] for i in q.vertices)
    total -= sum(gamma[a.src] * gamma2[a.dst] for a in q.arrows)
    return total


def reorient(q: Quiver, flip) -> Quiver:
    """Swap source and target of the selected arrows."""
    flip = set(flip)
    unknown = flip - {a.name for a in q.arrows}
    if unknown:
        raise KeyError(f"unknown arrows: {sorted(unknown)}")
    return Quiver(
        q.n_vertices,
        tuple(
            Arrow(a.name, a.dst, a.src) if a.name in flip else a for a in q.arrows
        ),
    )


# -- tripling and potentials -------------------------------------------------------


def reversed_name(name: str) -> str:
    return name + "~"


def loop_name(i: int) -> str:
    return f"w@{i}"


def _min_rotation(word: tuple[str, ...]) -> tuple[str, ...]:
    rotations = [word[k:] + word[:k] for k in range(len(word))]
    return min(rotations)


@dataclass(frozen=True)
class Potential:
    """Formal linear combination of cyclic words of arrows.

    Each term is (integer coefficient, word); words are stored in their
    lexicographically minimal rotation, with no duplicates.
    """

    terms: tuple[tuple[int, tuple[str, ...]], ...]

    def __post_init__(self):
        seen = set()
        for coeff, word in self.terms:
            if word in seen:
                raise ValueError(f"duplicate potential word {word}")
            if word != _min_rotation(word):
                raise ValueError(f"word {word} not in canonical rotation")
            if coeff == 0:
                raise ValueError("zero coefficient in potential")
            seen.add(word)


def make_potential(raw_terms) -> Potential:
    acc: dict[tuple[str, ...], int] = {}
    for coeff, word in raw_terms:
        word = _min_rotation(tuple(word))
        acc[word] = acc.get(word, 0) + coeff
    terms = tuple(sorted(((c, w) for w, c in acc.items() if c), key=lambda t: t[1]))
    return Potential(terms)


def triple(q: Quiver) -> tuple[Quiver, Potential]:
    """Double every arrow in reverse, add a loop per vertex, and build the
    cubic potential (sum of loops)(sum of commutators [a, a~]).

    In the left-to-right word convention the commutator letters come first and
    the loop letter last: the expansion keeps, per original arrow a, the two
    composable cyclic words +(a~, a, w@t(a)) and -(a, a~, w@s(a)).  This
    ordering makes the cut derivative come out as d/d(a~) = w@t(a).a - a.w@s(a)
    with letters applied right factor first.
    """
    arrows = list(q.arrows)
    arrows.extend(Arrow(reversed_name(a.name), a.dst, a.src) for a in q.arrows)
    arrows.extend(Arrow(loop_name(i), i, i) for i in q.vertices)
    tripled = Quiver(q.n_vertices, tuple(arrows))
    raw = []
    for a in q.arrows:
        raw.append((1, (reversed_name(a.name), a.name, loop_name(a.dst))))
        raw.append((-1, (a.name, reversed_name(a.name), loop_name(a.src))))
    return tripled, make_potential(raw)


def cyclic_derivative(pot: Potential, arrow: str) -> dict[tuple[str, ...], int]:
    """Differentiate a potential with respect to one arrow.

    Every occurrence of the arrow in every cyclic word is rotated to the front
    and deleted; the signed leftover paths are collected.  The result maps
    paths (left-to-right words) to integer coefficients.
    """
    out: dict[tuple[str, ...], int] = {}
    for coeff, word in pot.terms:
        for k, letter in enumerate(word):
            if letter != arrow:
                continue
            path = word[k + 1 :] + word[:k]
            s = out.get(path, 0) + coeff
            if s:
                out[path] = s
            else:
                del out[path]
    return out


@dataclass(frozen=True)
class Cut:
    arrows: frozenset[str]


def is_loop_arrow_name(name: str) -> bool:
    return name.startswith("w@") and name[2:].isdigit()


def validate_cut(pot: Potential, cut: Cut) -> bool:
    """True when every potential term contains exactly one cut arrow.

    Raises ContainsLoopArrow when the cut includes one of the added loops,
    which is never allowed.
    """
    loops = {name for name in cut.arrows if is_loop_arrow_name(name)}
    if loops:
        raise ContainsLoopArrow(f"cut contains loops: {sorted(loops)}")
    for _, word in pot.terms:
        if sum(1 for letter in word if letter in cut.arrows) != 1:
            return False
    return True


def canonical_cut(tripled: Quiver) -> Cut:
    """The cut consisting of all reversed arrows a~ of a tripled quiver."""
    names = {a.name for a in tripled.arrows}
    loops = {a for a in tripled.arrows if is_loop_arrow_name(a.name)}
    rev = {a for a in tripled.arrows if a.name.endswith("~")}
    base = [a for a in tripled.arrows if a not in loops and a not in rev]
    if {a.src for a in loops} != set(tripled.vertices) or len(loops) != tripled.n_vertices:
        raise NotATripledQuiver("expected exactly one loop w@i per vertex")
    if any(a.src != a.dst for a in loops):
        raise NotATripledQuiver("loop arrows must be loops")
    if len(base) != len(rev):
        raise NotATripledQuiver("reversed arrows do not match originals")
    for a in base:
        rname = reversed_name(a.name)
        if rname not in names:
            raise NotATripledQuiver(f"missing reversed arrow for {a.name}")
        r = tripled.arrow(rname)
        if (r.src, r.dst) != (a.dst, a.src):
            raise NotATripledQuiver(f"reversed arrow {rname} has wrong endpoints")
    return Cut(frozenset(a.name for a in rev))


def jacobi_relations(pot: Potential, cut: Cut) -> dict[str, dict[tuple[str, ...], int]]:
    """The cyclic derivatives of the potential along the cut, keyed by arrow."""
    if not validate_cut(pot, cut):
        raise ValueError("every potential term must contain exactly one cut arrow")
    return {name: cyclic_derivative(pot, name) for name in sorted(cut.arrows)}


def shift_constants(q: Quiver, gamma) -> tuple[int, int]:
    """Dimension-shift constants (l, l') for the tripled quiver.

    l is the tripled Ringel form on (gamma, gamma); l' adds twice the arrow
    products and must vanish identically; a nonzero l' signals a bug, not bad
    input.
    """
    gamma = check_dimension_vector(q, gamma)
    tripled, _ = triple(q)
    l = ringel_form(tripled, gamma, gamma)
    l_prime = l + 2 * sum(gamma[a.src] * gamma[a.dst] for a in q.arrows)
    if l_prime != 0:
        raise IdentityViolated(f"l' = {l_prime} != 0 for gamma={gamma}")
    return l, l_prime


def render_path(path: tuple[str, ...]) -> str:
    """Render a word with the rightmost-applied-first display convention."""
    if not path:
        return "1"
    return "·".join(reversed(path))


def render_relation(rel: dict[tuple[str, ...], int]) -> str:
    if not rel:
        return "0"
    parts = []
    for path in sorted(rel, key=lambda p: (rel[p] < 0, len(p), tuple(reversed(p)))):
        c = rel[path]
        body = render_path(path) if abs(c) == 1 else f"{abs(c)}*{render_path(path)}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
