from __future__ import annotations


__all__ = [
    'Framing',
    'FramingVariant',
    'diff_cocycle',
    'frame_gen',
    'framing_from_json',
    'load_framing',
    'restrict',
    'validate_framing',
    'winding_difference',
    'wtilde',
]


# -- IMPORTS --

# -- Standard libraries --
import json
import sys

from enum import Enum
from pathlib import Path
from typing import Any, Mapping, Sequence

# -- 3rd party libraries --

# -- Internal libraries --
sys.path.insert(0, str(Path(__file__).parent.parent))

from subtorelli.exceptions import (
    ConfigError,
    FramingInconsistency,
    NotAClosedCurve,
)
from subtorelli.homology import (
    Cochain,
    basis_of,
)
from subtorelli.mcg import (
    MappingClass,
    apply,
)
from subtorelli.surface import (
    PartitionedSurface,
    Spine,
    fixture_path,
    load_surface,
    surface_from_json,
)
from subtorelli.utils import NamedCallableProxy
from subtorelli.words import (
    PathWord,
    cusp_concat,
    is_inverse,
    letter_edge,
)


class Framing:
    """A combinatorial framing of a spine: spins on edges and turns at vertices.

    The winding of the lift of a smooth curve to the projective tangent
    bundle, measured in half-turns against the framing, is the sum of the
    spins of the edges it runs along (negated when run backwards) and the
    turns at its corners. Spins and turns are odd integers, and turns are
    antisymmetric in the ordered pair of half-edges.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> F = frame_gen(make_surface(1, [["d1"]]))
    >>> F.spin("b1"), F.turn("x1-", "y1-"), F.turn("y1-", "x1-")
    (-1, -1, 1)
    """
    __slots__ = ('_name', '_surface_hash', '_spins', '_orders', '_turns')

    _name: str
    _surface_hash: str | None
    _spins: dict[str, int]
    _orders: dict[str, tuple[str, ...]]
    _turns: dict[tuple[str, str], int]

    def __new__(
        cls,
        spins: Mapping[str, int],
        orders: Mapping[str, Sequence[str]],
        turns: Mapping[tuple[str, str], int],
        /,
        *,
        name: str = 'framing',
        surface_hash: str | None = None
    ) -> Framing:
        """Class constructor.

        Parameters
        ----------
        spins : `typing.Mapping`
            Edge name to spin.

        orders : `typing.Mapping`
            Vertex name to the half-edges at it, in cyclic order.

        turns : `typing.Mapping`
            Ordered pair ``(incoming, outgoing)`` of half-edges at a vertex to
            its turn value.

        name : `str`, default="framing"
            A display name.

        surface_hash : `str`, default=None
            The hash of the surface the framing was made for.

        Returns
        -------
        Framing
            The framing. No consistency checks are made here: see
            :py:func:`validate_framing`.
        """
        self = super().__new__(cls)
        self._name = name
        self._surface_hash = surface_hash
        self._spins = dict(spins)
        self._orders = {v: tuple(order) for v, order in orders.items()}
        self._turns = dict(turns)

        return self

    @property
    def name(self) -> str:
        return self._name

    @property
    def surface_hash(self) -> str | None:
        return self._surface_hash

    @property
    def spins(self) -> dict[str, int]:
        return dict(self._spins)

    @property
    def orders(self) -> dict[str, tuple[str, ...]]:
        return dict(self._orders)

    @property
    def turns(self) -> dict[tuple[str, str], int]:
        return dict(self._turns)

    def spin(self, edge: str, /) -> int:
        try:
            return self._spins[edge]
        except KeyError:
            raise FramingInconsistency(f'Framing `{self._name}` has no spin for edge `{edge}`')

    def turn(self, incoming: str, outgoing: str, /) -> int:
        try:
            return self._turns[(incoming, outgoing)]
        except KeyError:
            raise FramingInconsistency(
                f'Framing `{self._name}` has no turn from `{incoming}` into `{outgoing}`'
            )

    def with_turn(self, incoming: str, outgoing: str, value: int, /) -> Framing:
        """A copy with one turn entry (and its reverse, negated) replaced."""
        turns = dict(self._turns)
        turns[(incoming, outgoing)], turns[(outgoing, incoming)] = value, -value

        return Framing(
            self._spins, self._orders, turns, name=self._name, surface_hash=self._surface_hash
        )

    def to_json(self) -> dict[str, Any]:
        vertex_of = {h: v for v, order in self._orders.items() for h in order}
        turns: dict[str, list[list[Any]]] = {v: [] for v in self._orders}
        for (a, b), value in self._turns.items():
            turns[vertex_of[a]].append([a, b, value])

        return {
            'name': self._name,
            'surface_hash': self._surface_hash,
            'spins': dict(self._spins),
            'vertices': {
                v: {'order': list(order), 'turns': turns[v]} for v, order in self._orders.items()
            },
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Framing):
            return NotImplemented
        return (
            self._spins == other._spins and
            self._orders == other._orders and
            self._turns == other._turns
        )

    def __hash__(self) -> int:
        return hash((tuple(sorted(self._spins.items())), tuple(sorted(self._turns.items()))))

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}("{self._name}")'


def wtilde(framing: Framing, word: PathWord, /) -> int:
    """The winding, in half-turns, of the lift of a closed curve.

    Parameters
    ----------
    framing : `Framing`
        The framing to measure against.

    word : `PathWord`
        A smoothed closed curve, or a cusp concatenation ``f(h) * h^-1``.

    Returns
    -------
    int
        Spins along the letters plus turns at the corners.

    Raises
    ------
    NotAClosedCurve
        If the word is an arc.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> S = make_surface(1, [["d1"]])
    >>> F = frame_gen(S)
    >>> wtilde(F, S.word("b1"))
    -2
    >>> wtilde(F, S.spine.face_word(S.spine.disk_faces[0]))
    -2
    """
    if not word.is_closed:
        raise NotAClosedCurve(f'`{word.text}` is an arc: winding is defined on closed curves')

    spins = sum(
        -framing.spin(letter_edge(x)) if is_inverse(x) else framing.spin(letter_edge(x))
        for x in word.letters
    )
    turns = sum(n * framing.turn(a, b) for (a, b), n in word.corners.items())

    return spins + turns


def _canonical_turns(spine: Spine) -> dict[tuple[str, str], int]:
    turns = {}
    for order in spine.rotation.values():
        for i, a in enumerate(order):
            for j, b in enumerate(order):
                if i != j:
                    turns[(a, b)] = -1 if j > i else 1

    return turns


def _solve_spins(spine: Spine, turns: Mapping[tuple[str, str], int]) -> dict[str, int]:
    spins: dict[str, int] = {}

    for face in spine.disk_faces:
        counts: dict[str, int] = {}
        for x in face:
            counts[letter_edge(x)] = counts.get(letter_edge(x), 0) + (-1 if is_inverse(x) else 1)
        free = [e for e in counts if e not in spins]
        for e in free:
            if not counts[e]:
                spins[e] = 1
        candidates = [e for e in free if counts[e] in (1, -1)]
        for e in free:
            if counts[e] and e not in candidates[:1]:
                spins[e] = -1
        if not candidates:
            continue
        solve = candidates[0]
        spins[solve] = 0
        partial = Framing(spins, spine.rotation, turns)
        rest = wtilde(partial, spine.face_word(face))
        spins[solve] = (-2 - rest) * counts[solve]

    for e in spine.edges:
        spins.setdefault(e, 1)

    return spins


def _canonical(spins: dict[str, int], /) -> dict[str, int]:
    return spins


def _alternative(spins: dict[str, int], /) -> dict[str, int]:
    if 'x1' not in spins:
        raise ConfigError('The alternative framing needs a handle edge `x1`')
    return spins | {'x1': spins['x1'] + 2}


class FramingVariant(Enum):
    """The framings :py:func:`frame_gen` can build, as spin adjustments of the solved table."""
    CANONICAL = NamedCallableProxy(_canonical, name='canonical: spins solved from the disk faces')
    ALTERNATIVE = NamedCallableProxy(_alternative, name='alternative: the x1 spin raised by 2')


def frame_gen(surface: PartitionedSurface, variant: str | FramingVariant = 'canonical', /) -> Framing:
    """Builds a framing of the surface's spine in which every disk face winds by ``-2``.

    Turns are ``-1`` when the outgoing half-edge comes later than the
    incoming one in the cyclic order at their vertex, and ``+1`` otherwise.
    Spins are ``1`` on every edge except the edges found, face by face in
    tracing order, still unset with a single occurrence in the face: the
    first of these is solved for so that the face winds by ``-2``, the rest
    get ``-1``. On a canonical spine of genus ``g`` this gives
    ``b_1 = 3 - 4g`` and ``b_j = -1`` otherwise; a cap over a block ``P``
    gets ``z = 3 - 3|P| + sum_P b_j``.

    Parameters
    ----------
    surface : `PartitionedSurface`
        The surface.

    variant : `str` or `FramingVariant`, default="canonical"
        ``"canonical"`` or ``"alternative"`` (the ``x1`` spin raised by 2,
        which changes no disk face).

    Examples
    --------
    >>> from subtorelli.surface import make_surface, totally_separated_completion
    >>> S = make_surface(2, [["d1", "d2"], ["d3"]])
    >>> F = frame_gen(S)
    >>> [F.spin(b) for b in ("b1", "b2", "b3")]
    [-5, -1, -1]
    >>> T, _ = totally_separated_completion(S)
    >>> [frame_gen(T).spin(z) for z in ("z1", "z2")]
    [-9, -1]
    >>> frame_gen(S, "alternative").spin("x1")
    3
    """
    if isinstance(variant, str):
        try:
            variant = FramingVariant[variant.upper()]
        except KeyError:
            raise ConfigError(f'Unknown framing variant `{variant}`')

    spine = surface.spine
    turns = _canonical_turns(spine)
    spins = variant.value(_solve_spins(spine, turns))

    return Framing(
        spins, spine.rotation, turns,
        name=f'{variant.name.lower()}:{surface.name}', surface_hash=surface.hash
    )


def restrict(framing: Framing, spine: Spine, /) -> Framing:
    """The restriction of a framing to a sub-spine."""
    edges = set(spine.edges)
    half_edges = {h for order in spine.rotation.values() for h in order}

    return Framing(
        {e: s for e, s in framing.spins.items() if e in edges},
        spine.rotation,
        {(a, b): v for (a, b), v in framing.turns.items() if a in half_edges and b in half_edges},
        name=f'{framing.name}|restricted'
    )


def validate_framing(framing: Framing, surface: PartitionedSurface, /) -> None:
    """Checks a framing against a surface.

    Every edge needs an odd spin, every ordered pair of distinct half-edges
    at a vertex an odd turn with the reverse pair negated, and every disk
    face must wind by ``-2``.

    Raises
    ------
    FramingInconsistency
        Naming the first offending entry.
    """
    spine = surface.spine
    for e in spine.edges:
        if framing.spin(e) % 2 == 0:
            raise FramingInconsistency(f'Spin of `{e}` is even')

    for order in spine.rotation.values():
        for a in order:
            for b in order:
                if a == b:
                    continue
                value = framing.turn(a, b)
                if value % 2 == 0:
                    raise FramingInconsistency(f'Turn from `{a}` into `{b}` is even')
                if framing.turn(b, a) != -value:
                    raise FramingInconsistency(f'Turns between `{a}` and `{b}` are not antisymmetric')

    for face in spine.disk_faces:
        w = spine.face_word(face)
        value = wtilde(framing, w)
        if value != -2:
            raise FramingInconsistency(f'Disk face `{w.text}` winds by {value}, not -2')


def winding_difference(framing: Framing, f: MappingClass, word: PathWord, /) -> int:
    """The change of winding a mapping class causes on a curve or an arc.

    ``w(f(word)) - w(word)`` for a closed curve, and ``w(f(word) * word^-1)``
    for an arc.
    """
    image = apply(f, word)
    if word.is_closed:
        return wtilde(framing, image) - wtilde(framing, word)

    return wtilde(framing, cusp_concat(image, word))


def diff_cocycle(framing: Framing, f: MappingClass, surface: PartitionedSurface, /) -> Cochain:
    """Half the winding changes of ``f`` on the basis representatives, as a cochain.

    Torelli membership is not checked.

    Raises
    ------
    FramingInconsistency
        If some winding change is odd.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> from subtorelli.mcg import standard_catalog
    >>> S = make_surface(1, [["d1"]])
    >>> f = standard_catalog(S).parse("Tx1")
    >>> diff_cocycle(frame_gen(S), f, S).as_dict()
    {'x1': 0, 'y1': -1}
    >>> diff_cocycle(frame_gen(S, "alternative"), f, S).as_dict()
    {'x1': 0, 'y1': -2}
    """
    values = []
    for label, word in surface.basis_words:
        delta = winding_difference(framing, f, word)
        if delta % 2:
            raise FramingInconsistency(
                f'Winding change of `{f.text}` on `[{label}]` is odd ({delta})'
            )
        values.append(delta // 2)

    return Cochain(basis_of(surface), values)


def framing_from_json(data: Mapping[str, Any], surface: PartitionedSurface, /) -> Framing:
    """Builds a framing for ``surface`` from JSON.

    Two forms are accepted: a full table as written by
    :py:meth:`Framing.to_json`, or a patch
    ``{"surface": ..., "base": "canonical", "overrides": {"spins": {...}, "turns": [[a, b, v], ...]}}``
    applied to a generated framing.

    Raises
    ------
    ConfigError
        If the file was made for another surface or is malformed.
    """
    try:
        if 'base' in data:
            described = data.get('surface')
            if isinstance(described, str):
                described = load_surface(described)
            elif described is not None:
                described = surface_from_json(described)
            if described is not None and described.hash != surface.hash:
                raise ConfigError(f'Framing patch is for another surface than `{surface.name}`')
            framing = frame_gen(surface, data['base'])
            overrides = data.get('overrides', {})
            framing = Framing(
                framing.spins | overrides.get('spins', {}), framing.orders, framing.turns,
                name=data.get('name', framing.name), surface_hash=surface.hash
            )
            for a, b, value in overrides.get('turns', []):
                framing = framing.with_turn(a, b, value)
            return framing

        if data.get('surface_hash') != surface.hash:
            raise ConfigError(
                f'Framing is for surface hash `{data.get("surface_hash")}`, not `{surface.hash}`'
            )
        orders = {v: entry['order'] for v, entry in data['vertices'].items()}
        turns = {
            (a, b): value
            for entry in data['vertices'].values() for a, b, value in entry['turns']
        }
        return Framing(
            data['spins'], orders, turns,
            name=data.get('name', 'framing'), surface_hash=surface.hash
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f'Malformed framing description: {e}')


def load_framing(source: str | Path, surface: PartitionedSurface, /) -> Framing:
    """Loads a framing from a JSON file or a shipped fixture by bare name."""
    path = Path(source)
    if not path.is_file():
        path = fixture_path(str(source))
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f'Cannot read framing file `{path}`: {e}')

    return framing_from_json(data, surface)


if __name__ == "__main__":      # pragma: no cover
    # Doctest the module from the project root using
    #
    #     python -m doctest -v src/subtorelli/winding.py
    #
    import doctest
    doctest.testmod()
