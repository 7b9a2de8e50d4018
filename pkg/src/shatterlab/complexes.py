"""Simplicial complexes as downward-closed families of non-empty faces.

Faces are bitmasks held in a hash set plus per-dimension indexes, so
membership tests are O(1) and superset scans stay cheap at desk scale.
Vertices may be any labels 0..n-1 (Python ints are arbitrary precision, so
n is not capped here; only the conversion to a SetSystem needs n <= 64).
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from shatterlab._bits import bits, iter_bits, submasks
from shatterlab.errors import EmptyDomainError, InvalidArgumentError
from shatterlab.setsystem import SetSystem, _as_vertex_mask


class SimplicialComplex:
    """Non-empty faces of a complex on ambient vertex set {0..n-1}."""

    __slots__ = ("n", "_faces", "_by_dim")

    def __init__(self, n: int, faces: Iterable[int], *, validate: bool = True):
        self.n = n
        self._faces = frozenset(faces)
        by_dim: dict[int, list[int]] = {}
        for f in self._faces:
            by_dim.setdefault(f.bit_count() - 1, []).append(f)
        self._by_dim = {d: tuple(sorted(fs)) for d, fs in sorted(by_dim.items())}
        if validate:
            self._validate()

    def _validate(self):
        for f in self._faces:
            if f <= 0:
                raise InvalidArgumentError("faces must be non-empty vertex sets")
            if f >> self.n:
                raise InvalidArgumentError(f"face {f:#x} exceeds ambient vertex range")
        for f in self._faces:
            rest = f
            while rest:
                low = rest & -rest
                sub = f ^ low
                if sub and sub not in self._faces:
                    raise InvalidArgumentError(
                        f"not downward closed: {bits(sub)} missing under {bits(f)}"
                    )
                rest ^= low

    @classmethod
    def from_facets(cls, n: int, facets: Iterable, *, validate: bool = False):
        """Downward closure of the given facets (iterables of labels or masks)."""
        faces: set[int] = set()
        for fc in facets:
            mask = fc if isinstance(fc, int) else 0
            if not isinstance(fc, int):
                for v in fc:
                    mask |= 1 << v
            if mask >> n:
                raise InvalidArgumentError(f"facet {mask:#x} exceeds ambient vertex range")
            if mask.bit_count() > 24:
                raise InvalidArgumentError("facet too large to close downward explicitly")
            faces.update(submasks(mask))
        return cls(n, faces, validate=validate)

    # -- queries ----------------------------------------------------------

    def __contains__(self, face_mask: int) -> bool:
        return face_mask in self._faces

    def __len__(self) -> int:
        return len(self._faces)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.n == other.n
            and self._faces == other._faces
        )

    def __hash__(self):
        return hash((self.n, self._faces))

    @property
    def faces(self) -> frozenset[int]:
        return self._faces

    def faces_of_dim(self, d: int) -> tuple[int, ...]:
        return self._by_dim.get(d, ())

    @property
    def dimension(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def face_counts(self) -> dict[int, int]:
        return {d: len(fs) for d, fs in self._by_dim.items()}

    @property
    def vertex_mask(self) -> int:
        m = 0
        for f in self.faces_of_dim(0):
            m |= f
        return m

    def vertices(self) -> list[int]:
        return bits(self.vertex_mask)

    def as_setsystem(self) -> SetSystem:
        """The complex as a set system, with the empty set as a member."""
        return SetSystem.from_masks(self.n, (0, *self._faces))

    def facets(self) -> list[int]:
        """Inclusion-maximal faces, ascending."""
        out = []
        for d in sorted(self._by_dim, reverse=True):
            for f in self._by_dim[d]:
                if not any(f != g and f & g == f for g in out):
                    out.append(f)
        return sorted(out)


@dataclass(frozen=True)
class DensityReport:
    """e(S) and e(S)/|S| for a vertex subset S."""

    subject: int
    e_of_s: int
    density: Fraction


def degree(cx: SimplicialComplex, sigma, d: int) -> int:
    """Number of d-simplices of the complex containing the (d-1)-simplex sigma."""
    smask = _as_vertex_mask(cx.n, sigma)
    if smask.bit_count() != d:
        raise InvalidArgumentError(f"sigma must have {d} vertices for degree at dimension {d}")
    if smask not in cx:
        raise InvalidArgumentError("sigma is not a face of the complex")
    count = 0
    for v in iter_bits(cx.vertex_mask & ~smask):
        if smask | (1 << v) in cx:
            count += 1
    return count


def delta_d(cx: SimplicialComplex, d: int) -> int:
    """Minimum degree over all (d-1)-simplices."""
    lower = cx.faces_of_dim(d - 1)
    if not lower:
        raise EmptyDomainError(f"complex has no faces of dimension {d - 1}")
    return min(degree(cx, s, d) for s in lower)


def density(cx: SimplicialComplex, subset) -> DensityReport:
    """Exact rational density e(S)/|S|; e(S) counts faces meeting S."""
    smask = _as_vertex_mask(cx.n, subset)
    if smask == 0:
        raise InvalidArgumentError("density is undefined for the empty vertex set")
    e = sum(1 for f in cx.faces if f & smask)
    return DensityReport(smask, e, Fraction(e, smask.bit_count()))


def nonadjacent(cx: SimplicialComplex, sigma, sigma2) -> bool:
    """Vertex-disjoint and no edge of the complex meets both."""
    a = _as_vertex_mask(cx.n, sigma)
    b = _as_vertex_mask(cx.n, sigma2)
    for f in (a, b):
        if f not in cx:
            raise InvalidArgumentError("arguments must be faces of the complex")
    if a & b:
        return False
    return not any(e & a and e & b for e in cx.faces_of_dim(1))


def span_count(cx: SimplicialComplex, subset) -> int:
    """Number of non-empty faces contained in the given vertex set."""
    vmask = _as_vertex_mask(cx.n, subset)
    return sum(1 for f in cx.faces if f & ~vmask == 0)


def min_degree_prune(
    cx: SimplicialComplex, d: int, threshold: int, *, iterate: bool = False
) -> SimplicialComplex:
    """Delete (d-1)-simplices of degree < threshold and every face containing them.

    A single pass by default, matching the construction this implements; the
    one pass does not guarantee delta_d >= threshold afterwards, so an
    optional iterate-to-fixpoint mode is provided.
    """
    if d < 1:
        raise InvalidArgumentError("d must be >= 1")
    current = cx
    while True:
        doomed = [
            s for s in current.faces_of_dim(d - 1) if degree(current, s, d) < threshold
        ]
        if not doomed:
            break
        faces = {f for f in current.faces if not any(f & s == s for s in doomed)}
        current = SimplicialComplex(cx.n, faces, validate=False)
        if not iterate:
            break
    return current


@dataclass(frozen=True)
class OverlapWitness:
    vertex_set: int
    count: int


def overlap_witness(cx: SimplicialComplex, rho, d: int, m: int) -> OverlapWitness:
    """An m-bounded vertex set around rho spanning many faces.

    rho is a d'-simplex contained in N d-simplices.  If all N fit inside m
    vertices the witness is their union; otherwise d-simplices through rho
    are accumulated greedily (fewest new vertices first, ties by smaller
    bitmask) for as long as the union stays within m vertices.  The final
    size lies in [m-d, m] and the span satisfies
    count >= min(N, (2^(d+1) - 2^(d'+1))/(d - d') * (m - d)).
    """
    rmask = _as_vertex_mask(cx.n, rho)
    if rmask not in cx:
        raise InvalidArgumentError("rho is not a face of the complex")
    d_prime = rmask.bit_count() - 1
    if d_prime >= d:
        raise InvalidArgumentError("rho must have dimension strictly below d")
    if m <= d:
        raise InvalidArgumentError("m must exceed d")
    cofaces = [f for f in cx.faces_of_dim(d) if f & rmask == rmask]
    if not cofaces:
        raise EmptyDomainError("rho is contained in no d-simplex")
    union_all = 0
    for f in cofaces:
        union_all |= f
    if union_all.bit_count() <= m:
        return OverlapWitness(union_all, span_count(cx, union_all))
    # Greedy accumulation.  Stopping at the first size in [m-d, m] can fall
    # short of the count bound (many simplices pairwise meeting only in rho),
    # so keep absorbing simplices while the union stays within m vertices.
    remaining = sorted(cofaces)
    v = remaining.pop(0)
    while True:
        best = None
        best_key = None
        for f in remaining:
            grown = (v | f).bit_count()
            if grown > m:
                continue
            key = ((f & ~v).bit_count(), f)
            if best_key is None or key < best_key:
                best, best_key = f, key
        if best is None:
            break
        v |= best
        remaining.remove(best)
    return OverlapWitness(v, span_count(cx, v))


def parse_complex_json(text: str) -> SimplicialComplex:
    import json

    try:
        obj = json.loads(text)
        n = obj["n"]
        facets = obj["facets"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"bad complex JSON: {exc}") from exc
    return SimplicialComplex.from_facets(n, facets)


def format_complex_json(cx: SimplicialComplex) -> str:
    import json

    return json.dumps(
        {"facets": [bits(f) for f in cx.facets()], "n": cx.n},
        sort_keys=True,
        separators=(",", ":"),
    ) + "\n"
