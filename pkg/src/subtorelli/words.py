from __future__ import annotations


__all__ = [
    'Corner',
    'Letter',
    'PathWord',
    'concat',
    'corner_key',
    'cusp_concat',
    'cyclic_reduce',
    'in_half_edge',
    'inverse_letter',
    'invert',
    'is_inverse',
    'junctions',
    'letter_edge',
    'letter_endpoints',
    'out_half_edge',
    'parse_word',
    'reduce_letters',
    'smooth',
]


# -- IMPORTS --

# -- Standard libraries --
import sys

from pathlib import Path
from typing import Iterable, Iterator, Mapping, TypeAlias

# -- 3rd party libraries --

# -- Internal libraries --
sys.path.insert(0, str(Path(__file__).parent.parent))

from subtorelli.exceptions import (
    InvalidWord,
    NotComposable,
)


#: A signed generator name: ``"x1"`` or its formal inverse ``"~x1"``
Letter: TypeAlias = str

#: A junction event ``(incoming half-edge, outgoing half-edge)`` at a vertex
Corner: TypeAlias = tuple[str, str]

#: Endpoint table of a spine: edge name to ``(start vertex, end vertex)``
Endpoints: TypeAlias = Mapping[str, tuple[str, str]]


INVERSE_PREFIX = '~'


def letter_edge(letter: Letter, /) -> str:
    """Returns the edge name underlying a letter.

    Examples
    --------
    >>> letter_edge("~y2"), letter_edge("t1")
    ('y2', 't1')
    """
    return letter[1:] if letter.startswith(INVERSE_PREFIX) else letter


def is_inverse(letter: Letter, /) -> bool:
    return letter.startswith(INVERSE_PREFIX)


def inverse_letter(letter: Letter, /) -> Letter:
    """Returns the formal inverse of a letter.

    Examples
    --------
    >>> inverse_letter("x1"), inverse_letter("~x1")
    ('~x1', 'x1')
    """
    return letter[1:] if is_inverse(letter) else f'{INVERSE_PREFIX}{letter}'


def out_half_edge(letter: Letter, /) -> str:
    """The half-edge through which a traversal of ``letter`` leaves its first vertex.

    An edge ``e`` has the half-edge ``e+`` at its start and ``e-`` at its end.

    Examples
    --------
    >>> out_half_edge("x1"), out_half_edge("~x1")
    ('x1+', 'x1-')
    """
    edge = letter_edge(letter)
    return f'{edge}-' if is_inverse(letter) else f'{edge}+'


def in_half_edge(letter: Letter, /) -> str:
    """The half-edge through which a traversal of ``letter`` arrives at its last vertex.

    Examples
    --------
    >>> in_half_edge("x1"), in_half_edge("~x1")
    ('x1-', 'x1+')
    """
    edge = letter_edge(letter)
    return f'{edge}+' if is_inverse(letter) else f'{edge}-'


def letter_endpoints(letter: Letter, endpoints: Endpoints, /) -> tuple[str, str]:
    """Returns the ``(start, end)`` vertices of a letter, given the edge endpoint table.
    """
    try:
        start, end = endpoints[letter_edge(letter)]
    except KeyError:
        raise InvalidWord(f'Unknown generator `{letter_edge(letter)}`')

    return (end, start) if is_inverse(letter) else (start, end)


def reduce_letters(letters: Iterable[Letter], /) -> tuple[Letter, ...]:
    """Freely reduces a sequence of letters.

    Single left-to-right pass with a stack. Free reduction is confluent, so
    the result does not depend on the order in which cancelling pairs are
    removed.

    Parameters
    ----------
    letters : `typing.Iterable`
        The letters to reduce.

    Returns
    -------
    tuple
        The freely reduced letters.

    Examples
    --------
    >>> reduce_letters(["x1", "y1", "~y1", "x2"])
    ('x1', 'x2')
    >>> reduce_letters(["x1", "y1", "~y1", "~x1"])
    ()
    """
    stack: list[Letter] = []

    for letter in letters:
        if stack and stack[-1] == inverse_letter(letter):
            stack.pop()
        else:
            stack.append(letter)

    return tuple(stack)


def cyclic_reduce(letters: Iterable[Letter], /) -> tuple[Letter, ...]:
    """Freely and then cyclically reduces a sequence of letters.

    Examples
    --------
    >>> cyclic_reduce(["t1", "x1", "y1", "~t1"])
    ('x1', 'y1')
    >>> cyclic_reduce(["x1", "~x1"])
    ()
    """
    reduced = reduce_letters(letters)

    i, j = 0, len(reduced) - 1
    while i < j and reduced[i] == inverse_letter(reduced[j]):
        i += 1
        j -= 1

    return reduced[i:j + 1]


def corner_key(incoming: str, outgoing: str, /) -> tuple[Corner | None, int]:
    """Normalises a junction to a sorted key and an orientation sign.

    Turning from ``b`` into ``a`` is the reverse of turning from ``a`` into
    ``b``, so a corner and its reverse share a key with opposite signs. A
    backtrack (``incoming == outgoing``) is a cusp and has no key.

    Examples
    --------
    >>> corner_key("x1-", "y1-")
    (('x1-', 'y1-'), 1)
    >>> corner_key("y1-", "x1-")
    (('x1-', 'y1-'), -1)
    >>> corner_key("t1-", "t1-")
    (None, 0)
    """
    if incoming == outgoing:
        return None, 0

    if incoming < outgoing:
        return (incoming, outgoing), 1

    return (outgoing, incoming), -1


def junctions(letters: tuple[Letter, ...], /, *, closed: bool) -> tuple[Corner, ...]:
    """The junctions met when traversing ``letters``.

    Interior junctions only for arcs; for closed words the wrap-around
    junction from the last letter back to the first is included too.

    Examples
    --------
    >>> junctions(("x1", "y1"), closed=False)
    (('x1-', 'y1+'),)
    >>> junctions(("x1", "y1"), closed=True)
    (('x1-', 'y1+'), ('y1-', 'x1+'))
    """
    pairs = [
        (in_half_edge(a), out_half_edge(b))
        for a, b in zip(letters, letters[1:])
    ]
    if closed and letters:
        pairs.append((in_half_edge(letters[-1]), out_half_edge(letters[0])))

    return tuple(pairs)


def _normalise_corners(
    terms: Iterable[tuple[Corner, int]], /
) -> tuple[tuple[Corner, int], ...]:
    totals: dict[Corner, int] = {}

    for (a, b), count in terms:
        key, sign = corner_key(a, b)
        if key is None or count == 0:
            continue
        totals[key] = totals.get(key, 0) + sign * count

    return tuple(sorted((k, v) for k, v in totals.items() if v))


def _check_composable(
    letters: tuple[Letter, ...], endpoints: Endpoints, start: str, end: str, /
) -> None:
    current = start
    for letter in letters:
        s, e = letter_endpoints(letter, endpoints)
        if s != current:
            raise NotComposable(f'Letter `{letter}` starts at `{s}`, not at `{current}`')
        current = e
    if current != end:
        raise NotComposable(f'Path ends at `{current}`, not at `{end}`')


class PathWord:
    """A freely reduced edge path on a ribbon-graph spine.

    Besides its letters and endpoint vertices a path carries a signed
    multiset of corners. The corners record the turning of the path's lift to
    the projective tangent bundle, in a form that does not depend on any
    framing: a framing assigns each corner a turn value and each edge a spin,
    and the winding of the lift is the sum of the two (see
    :py:func:`~subtorelli.winding.wtilde`).

    Paths built by :py:func:`parse_word` carry no corners; use
    :py:func:`smooth` (or :py:meth:`~subtorelli.surface.PartitionedSurface.word`)
    to attach the corners of the smooth curve that the letters describe.

    Examples
    --------
    >>> w = PathWord(["x1", "y1", "~y1"], start="H", end="H")
    >>> w
    PathWord("x1", start="H", end="H")
    >>> w.is_closed
    True
    >>> len(w)
    1
    """
    __slots__ = ('_letters', '_start', '_end', '_corners', '_cusp', '_endpoints')

    _letters: tuple[Letter, ...]
    _start: str
    _end: str
    _corners: tuple[tuple[Corner, int], ...]
    _cusp: bool
    _endpoints: Endpoints | None

    def __new__(
        cls,
        letters: Iterable[Letter] = (),
        /,
        *,
        start: str,
        end: str,
        corners: Mapping[Corner, int] | Iterable[tuple[Corner, int]] | None = None,
        cusp: bool = False,
        endpoints: Endpoints | None = None
    ) -> PathWord:
        """Class constructor.

        Parameters
        ----------
        letters : `typing.Iterable`, default=()
            The letters of the path, freely reduced on construction.

        start : `str`
            The start vertex.

        end : `str`
            The end vertex.

        corners : `typing.Mapping` or `typing.Iterable`, default=None
            Corner multiplicities, either as a mapping or as
            ``(corner, count)`` pairs. Reversed corners are folded into
            their normalised key with the opposite sign.

        cusp : `bool`, default=False
            Whether the path is a cusp concatenation.

        endpoints : `typing.Mapping`, default=None
            The spine's edge endpoint table. When given, the letters must
            run from ``start`` to ``end`` through meeting endpoints.

        Returns
        -------
        PathWord
            The path.

        Raises
        ------
        NotComposable
            If the path is empty but its endpoints differ, or if an endpoint
            table is given and consecutive letters do not meet.
        """
        letters = tuple(letters)
        if endpoints is not None:
            _check_composable(letters, endpoints, start, end)

        self = super().__new__(cls)
        self._letters = reduce_letters(letters)
        if not self._letters and start != end:
            raise NotComposable(
                f'An empty path cannot join `{start}` to `{end}`'
            )
        self._start = start
        self._end = end
        if isinstance(corners, Mapping):
            corners = corners.items()
        self._corners = _normalise_corners(corners or ())
        self._cusp = bool(cusp)
        self._endpoints = endpoints

        return self

    @property
    def letters(self) -> tuple[Letter, ...]:
        return self._letters

    @property
    def start(self) -> str:
        return self._start

    @property
    def end(self) -> str:
        return self._end

    @property
    def corners(self) -> dict[Corner, int]:
        """`dict`: The normalised corner multiset, without zero entries."""
        return dict(self._corners)

    @property
    def cusp(self) -> bool:
        return self._cusp

    @property
    def endpoints(self) -> Endpoints | None:
        """`dict` or `None`: The endpoint table the path was checked against, if any."""
        return self._endpoints

    @property
    def is_closed(self) -> bool:
        return self._start == self._end

    @property
    def is_empty(self) -> bool:
        return not self._letters

    @property
    def text(self) -> str:
        """`str`: The letters in the whitespace separated word syntax.

        Examples
        --------
        >>> PathWord(["~t2", "t1"], start="q2", end="q1").text
        '~t2 t1'
        """
        return ' '.join(self._letters)

    def chain(self) -> dict[str, int]:
        """The signed edge counts of the path, the 1-chain it carries.

        Examples
        --------
        >>> PathWord(["x1", "y1", "~x1", "y1"], start="H", end="H").chain()
        {'y1': 2}
        """
        counts: dict[str, int] = {}
        for letter in self._letters:
            edge = letter_edge(letter)
            counts[edge] = counts.get(edge, 0) + (-1 if is_inverse(letter) else 1)

        return {e: c for e, c in counts.items() if c}

    def with_corners(self, corners: Mapping[Corner, int], /) -> PathWord:
        return PathWord(
            self._letters, start=self._start, end=self._end,
            corners=corners, cusp=self._cusp, endpoints=self._endpoints
        )

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self._letters)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathWord):
            return NotImplemented

        return (
            self._letters == other._letters and
            self._start == other._start and
            self._end == other._end and
            self._corners == other._corners and
            self._cusp == other._cusp
        )

    def __hash__(self) -> int:
        return hash((self._letters, self._start, self._end, self._corners, self._cusp))

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}("{self.text}", start="{self._start}", end="{self._end}")'


def smooth(word: PathWord, /) -> PathWord:
    """Attaches the corners of the smooth curve described by the letters.

    Closed paths are smoothed as closed curves: the corners are the cyclic
    junctions of the cyclically reduced word, so conjugating a loop by a
    tail does not change its smoothing. Arcs get their interior junctions;
    their endpoints meet the boundary along the fixed tangent line there and
    contribute nothing.

    Examples
    --------
    >>> smooth(PathWord(["x1"], start="H", end="H")).corners
    {('x1+', 'x1-'): -1}
    >>> smooth(PathWord(["~t2", "t1"], start="q2", end="q1")).corners
    {('t1+', 't2+'): -1}
    """
    if word.is_closed:
        core = cyclic_reduce(word.letters)
        pairs = junctions(core, closed=True)
    else:
        pairs = junctions(word.letters, closed=False)

    return word.with_corners(
        _normalise_corners((pair, 1) for pair in pairs)
    )


def concat(a: PathWord, b: PathWord, /) -> PathWord:
    """Concatenates two paths, ``a`` first.

    Corner multisets add, so the lifted winding is additive under
    concatenation.

    Raises
    ------
    NotComposable
        If ``a`` does not end where ``b`` starts.

    Examples
    --------
    >>> a = PathWord(["x1", "y1"], start="H", end="H")
    >>> b = PathWord(["~y1", "x2"], start="H", end="H")
    >>> concat(a, b).text
    'x1 x2'
    >>> concat(a, PathWord(["t1"], start="H", end="q1")).end
    'q1'
    """
    if a.end != b.start:
        raise NotComposable(
            f'Path `{a.text}` ends at `{a.end}` but `{b.text}` starts at `{b.start}`'
        )

    return PathWord(
        a.letters + b.letters,
        start=a.start,
        end=b.end,
        corners=tuple(a.corners.items()) + tuple(b.corners.items()),
        cusp=a.cusp or b.cusp,
        endpoints=a.endpoints or b.endpoints
    )


def invert(a: PathWord, /) -> PathWord:
    """Reverses a path, inverting every letter and every corner.

    Examples
    --------
    >>> invert(PathWord(["x1", "y1"], start="H", end="H")).text
    '~y1 ~x1'
    >>> h = invert(PathWord(["~t1", "t2"], start="q1", end="q2"))
    >>> h.text, h.start, h.end
    ('~t2 t1', 'q2', 'q1')
    """
    return PathWord(
        tuple(inverse_letter(letter) for letter in reversed(a.letters)),
        start=a.end,
        end=a.start,
        corners={k: -v for k, v in a.corners.items()},
        cusp=a.cusp,
        endpoints=a.endpoints
    )


def cusp_concat(fh: PathWord, h: PathWord, /) -> PathWord:
    """The closed curve ``f(h) * h^-1`` with two cusps.

    The curve runs along ``fh`` and back along ``h``. At both junctions the
    tangent lines agree, so the cusps contribute no turning in the
    projective tangent bundle and no junction corners are added.

    Raises
    ------
    NotComposable
        If ``fh`` and ``h`` do not share both endpoints.

    Examples
    --------
    >>> h = PathWord(["~t1", "t2"], start="q1", end="q2")
    >>> fh = PathWord(["~t1", "x1", "y1", "~x1", "~y1", "t2"], start="q1", end="q2")
    >>> w = cusp_concat(fh, h)
    >>> w.text, w.is_closed, w.cusp
    ('~t1 x1 y1 ~x1 ~y1 t1', True, True)
    >>> cusp_concat(h, h).is_empty
    True
    """
    if fh.start != h.start or fh.end != h.end:
        raise NotComposable(
            f'Arcs `{fh.text}` and `{h.text}` do not share both endpoints'
        )

    joined = concat(fh, invert(h))

    return PathWord(
        joined.letters, start=joined.start, end=joined.end,
        corners=joined.corners, cusp=True, endpoints=joined.endpoints
    )


def parse_word(text: str, endpoints: Endpoints, /, *, start: str | None = None) -> PathWord:
    """Parses the whitespace separated word syntax into a path.

    Parameters
    ----------
    text : `str`
        Generator names separated by whitespace, ``~`` marking inverses,
        e.g. ``"x1 y1 ~x1 ~y1"``.

    endpoints : `typing.Mapping`
        The spine's edge endpoint table.

    start : `str`, default=None
        The vertex of an empty word. Required only when ``text`` is blank.

    Returns
    -------
    PathWord
        The freely reduced path, without corners.

    Raises
    ------
    InvalidWord
        If a token is malformed or names an unknown generator, or if
        ``text`` is blank and no ``start`` is given.

    NotComposable
        If consecutive letters do not meet.

    Examples
    --------
    >>> ends = {"x1": ("H", "H"), "t1": ("H", "q1"), "b1": ("q1", "q1")}
    >>> w = parse_word("t1 b1 ~t1", ends)
    >>> w.text, w.start, w.end
    ('t1 b1 ~t1', 'H', 'H')
    >>> parse_word("t1 x1", ends)
    Traceback (most recent call last):
    ...
    subtorelli.exceptions.NotComposable: Letter `x1` starts at `H`, not at `q1`
    """
    tokens = text.split()

    if not tokens:
        if start is None:
            raise InvalidWord('An empty word needs an explicit start vertex')
        return PathWord((), start=start, end=start)

    for token in tokens:
        if token in ('', INVERSE_PREFIX) or token.count(INVERSE_PREFIX) > 1 or INVERSE_PREFIX in token[1:]:
            raise InvalidWord(f'Malformed token `{token}`')

    first = letter_endpoints(tokens[0], endpoints)[0]
    if start is not None and start != first:
        raise NotComposable(f'Word `{text}` starts at `{first}`, not at `{start}`')
    last = letter_endpoints(tokens[-1], endpoints)[1]

    return PathWord(tokens, start=first, end=last, endpoints=endpoints)


if __name__ == "__main__":      # pragma: no cover
    # Doctest the module from the project root using
    #
    #     python -m doctest -v src/subtorelli/words.py
    #
    import doctest
    doctest.testmod()
