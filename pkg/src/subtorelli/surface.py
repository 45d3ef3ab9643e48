from __future__ import annotations


__all__ = [
    'ComplementPiece',
    'Embedding',
    'PartitionedSurface',
    'Spine',
    'attach_handles',
    'check_embedding',
    'compose',
    'fixture_path',
    'hub_items',
    'identity_embedding',
    'load_surface',
    'make_surface',
    'run_core',
    'standard_certificates',
    'surface_from_json',
    'totally_separated_completion',
]


# -- IMPORTS --

# -- Standard libraries --
import functools
import hashlib
import itertools
import json
import sys

from pathlib import Path
from typing import Any, Iterable, Mapping, NamedTuple, Sequence, TypeAlias

# -- 3rd party libraries --

# -- Internal libraries --
sys.path.insert(0, str(Path(__file__).parent.parent))

from subtorelli.exceptions import (
    ConfigError,
    DecompositionMismatch,
    InvalidPartition,
    NotAClosedCurve,
)
from subtorelli.words import (
    Letter,
    PathWord,
    concat,
    in_half_edge,
    invert,
    is_inverse,
    letter_edge,
    parse_word,
    smooth,
)


#: Partition blocks: an ordered tuple of blocks of boundary labels
Partition: TypeAlias = tuple[tuple[str, ...], ...]

#: A labelled basis representative ``(label, word)``
BasisWord: TypeAlias = tuple[str, PathWord]


FIXTURES = Path(__file__).parent / 'fixtures'

HUB = 'H'


def fixture_path(name: str, /) -> Path:
    """Resolves a shipped fixture by bare name, e.g. ``"sigma_2_6_mixed"`` or ``"sigma_1_2.json"``.
    """
    path = FIXTURES / (name if name.endswith('.json') else f'{name}.json')
    if not path.is_file():
        raise ConfigError(f'No shipped fixture named `{name}`')

    return path


def _fresh(taken: Iterable[str], prefix: str, /) -> str:
    taken = set(taken)
    for k in itertools.count(1):
        if f'{prefix}{k}' not in taken:
            return f'{prefix}{k}'


def _leaving_letter(half_edge: str, /) -> Letter:
    edge, end = half_edge[:-1], half_edge[-1]
    return edge if end == '+' else f'~{edge}'


class Spine:
    """A ribbon graph onto which a surface deformation retracts, plus its boundary loops.

    Every vertex carries the counterclockwise cyclic order of the half-edges
    at it. An edge ``e`` has the half-edge ``e+`` at its start vertex and
    ``e-`` at its end vertex. Faces are traced by arriving along a half-edge
    and leaving along the next one in the cyclic order, which keeps each face
    on the right of the traversal. Boundary loops are edges whose face is
    the loop itself: the surface lies to their left. Every other face is a
    disk of the surface.

    Examples
    --------
    A torus with one hole:

    >>> spine = Spine(
    ...     {"x1": ("H", "H"), "y1": ("H", "H"), "t1": ("H", "q1"), "b1": ("q1", "q1")},
    ...     {"H": ("x1+", "y1+", "x1-", "y1-", "t1+"), "q1": ("t1-", "b1-", "b1+")},
    ...     {"d1": "b1"}
    ... )
    >>> spine.disk_faces
    (('x1', '~y1', '~x1', 'y1', 't1', '~b1', '~t1'),)
    >>> spine.euler_characteristic
    -1
    """
    __slots__ = (
        '_endpoints', '_rotation', '_boundary_loops', '_positions',
        '_faces', '_disk_faces',
    )

    _endpoints: dict[str, tuple[str, str]]
    _rotation: dict[str, tuple[str, ...]]
    _boundary_loops: dict[str, str]
    _positions: dict[str, int]
    _faces: tuple[tuple[Letter, ...], ...]
    _disk_faces: tuple[tuple[Letter, ...], ...]

    def __new__(
        cls,
        endpoints: Mapping[str, tuple[str, str]],
        rotation: Mapping[str, Sequence[str]],
        boundary_loops: Mapping[str, str],
        /
    ) -> Spine:
        """Class constructor.

        Parameters
        ----------
        endpoints : `typing.Mapping`
            Edge name to ``(start vertex, end vertex)``, in edge order.

        rotation : `typing.Mapping`
            Vertex name to the counterclockwise cyclic order of its half-edges.

        boundary_loops : `typing.Mapping`
            Boundary label to the loop edge running along that boundary.

        Returns
        -------
        Spine
            The spine.

        Raises
        ------
        InvalidPartition
            If the half-edges in the rotation do not match the edges, or a
            boundary loop does not bound its own face.
        """
        self = super().__new__(cls)
        self._endpoints = {e: tuple(ends) for e, ends in endpoints.items()}
        self._rotation = {v: tuple(order) for v, order in rotation.items()}
        self._boundary_loops = dict(boundary_loops)

        expected = {
            f'{e}+': s for e, (s, _) in self._endpoints.items()
        } | {
            f'{e}-': t for e, (_, t) in self._endpoints.items()
        }
        self._positions = {}
        for vertex, order in self._rotation.items():
            for i, half_edge in enumerate(order):
                if expected.get(half_edge) != vertex or half_edge in self._positions:
                    raise InvalidPartition(
                        f'Half-edge `{half_edge}` is misplaced at vertex `{vertex}`'
                    )
                self._positions[half_edge] = i
        if len(self._positions) != len(expected):
            raise InvalidPartition('Every half-edge must appear in exactly one rotation')

        self._faces = self._trace_faces()
        loop_faces = {(loop,) for loop in self._boundary_loops.values()}
        if not loop_faces <= set(self._faces):
            raise InvalidPartition('Every boundary loop must bound a face of its own')
        self._disk_faces = tuple(f for f in self._faces if f not in loop_faces)

        return self

    def _trace_faces(self) -> tuple[tuple[Letter, ...], ...]:
        seen: set[Letter] = set()
        faces = []

        for edge in self._endpoints:
            for first in (edge, f'~{edge}'):
                if first in seen:
                    continue
                face = []
                letter = first
                while letter not in seen:
                    seen.add(letter)
                    face.append(letter)
                    letter = _leaving_letter(self.next_half_edge(in_half_edge(letter)))
                faces.append(tuple(face))

        return tuple(faces)

    @property
    def edges(self) -> tuple[str, ...]:
        return tuple(self._endpoints)

    @property
    def endpoints(self) -> dict[str, tuple[str, str]]:
        return dict(self._endpoints)

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self._rotation)

    @property
    def rotation(self) -> dict[str, tuple[str, ...]]:
        return dict(self._rotation)

    @property
    def boundary_loops(self) -> dict[str, str]:
        """`dict`: Boundary label to boundary loop edge."""
        return dict(self._boundary_loops)

    @property
    def faces(self) -> tuple[tuple[Letter, ...], ...]:
        return self._faces

    @property
    def disk_faces(self) -> tuple[tuple[Letter, ...], ...]:
        """`tuple`: The faces of the spine that are disks of the surface, in tracing order."""
        return self._disk_faces

    @property
    def euler_characteristic(self) -> int:
        return len(self._rotation) - len(self._endpoints) + len(self._disk_faces)

    def vertex_of(self, half_edge: str, /) -> str:
        edge, end = half_edge[:-1], half_edge[-1]
        start, stop = self._endpoints[edge]
        return start if end == '+' else stop

    def position(self, half_edge: str, /) -> int:
        """The index of a half-edge in the cyclic order at its vertex."""
        return self._positions[half_edge]

    def next_half_edge(self, half_edge: str, /) -> str:
        order = self._rotation[self.vertex_of(half_edge)]
        return order[(self._positions[half_edge] + 1) % len(order)]

    def face_word(self, face: Sequence[Letter], /) -> PathWord:
        """A disk face as a smoothed closed path at the start vertex of its first letter."""
        edge = face[0].lstrip('~')
        start = self._endpoints[edge][1 if face[0].startswith('~') else 0]

        return smooth(PathWord(face, start=start, end=start, endpoints=self._endpoints))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Spine):
            return NotImplemented
        return (
            self._endpoints == other._endpoints and
            self._rotation == other._rotation and
            self._boundary_loops == other._boundary_loops
        )

    def __hash__(self) -> int:
        return hash((tuple(self._endpoints.items()), tuple(self._rotation.items())))


class PartitionedSurface:
    """A compact oriented surface with a partition of its boundary components into blocks.

    The surface is carried by its :py:class:`Spine` together with labelled
    representatives of a basis of :math:`H_1^{\\mathcal{P}}(\\Sigma;\\mathbb{Z})`.
    Surfaces are built by :py:func:`make_surface` (canonical spines) or by the
    constructions :py:func:`totally_separated_completion` and
    :py:func:`attach_handles`. Values are immutable.

    Examples
    --------
    >>> S = make_surface(1, [["d1", "d2"]])
    >>> S.genus, S.boundaries, S.partition
    (1, ('d1', 'd2'), (('d1', 'd2'),))
    >>> [label for label, _ in S.basis_words]
    ['x1', 'y1', 'h1_1', 'S1_1']
    >>> S.word("t1 b1 ~t1").is_closed
    True
    """
    __slots__ = (
        '_genus', '_partition', '_spine', '_basis_words', '_pairing',
        '_name', '_description', '_root', '_hash',
    )

    _genus: int
    _partition: Partition
    _spine: Spine
    _basis_words: tuple[BasisWord, ...]
    _pairing: tuple[tuple[int, ...], ...] | None
    _name: str
    _description: dict[str, Any]
    _root: PartitionedSurface | None
    _hash: str

    def __new__(
        cls,
        genus: int,
        partition: Iterable[Iterable[str]],
        spine: Spine,
        basis_words: Iterable[BasisWord],
        /,
        *,
        pairing: Sequence[Sequence[int]] | None = None,
        name: str | None = None,
        description: Mapping[str, Any] | None = None,
        root: PartitionedSurface | None = None
    ) -> PartitionedSurface:
        """Class constructor.

        Parameters
        ----------
        genus : `int`
            The genus.

        partition : `typing.Iterable`
            The partition blocks, each an iterable of boundary labels.

        spine : `Spine`
            The spine, whose boundary loops must be keyed by exactly the
            boundary labels of the partition.

        basis_words : `typing.Iterable`
            ``(label, word)`` pairs of basis representatives, in basis order.

        pairing : `typing.Sequence`, default=None
            The intersection pairing on the basis, if it is fixed by table.
            When :py:data:`None` every representative must be closed and the
            pairing is computed from the ribbon structure.

        name : `str`, default=None
            A display name.

        description : `typing.Mapping`, default=None
            The JSON description that the surface hash is taken over.

        root : `PartitionedSurface`, default=None
            The canonical surface this one was built from, if any.

        Returns
        -------
        PartitionedSurface
            The surface.
        """
        self = super().__new__(cls)
        self._genus = genus
        self._partition = tuple(tuple(block) for block in partition)
        self._spine = spine
        self._basis_words = tuple(basis_words)
        self._pairing = tuple(tuple(row) for row in pairing) if pairing is not None else None
        self._description = dict(description or {
            'genus': genus, 'partition': [list(b) for b in self._partition]
        })
        self._hash = hashlib.sha256(
            json.dumps(self._description, sort_keys=True, separators=(',', ':')).encode()
        ).hexdigest()
        self._name = name or self._hash[:12]
        self._root = root

        if sorted(self.boundaries) != sorted(spine.boundary_loops):
            raise InvalidPartition('Spine boundary loops do not match the partition')

        return self

    @property
    def genus(self) -> int:
        return self._genus

    @property
    def partition(self) -> Partition:
        return self._partition

    @property
    def boundaries(self) -> tuple[str, ...]:
        """`tuple`: Boundary labels, block by block."""
        return tuple(label for block in self._partition for label in block)

    @property
    def spine(self) -> Spine:
        return self._spine

    @property
    def basis_words(self) -> tuple[BasisWord, ...]:
        return self._basis_words

    @property
    def pairing_table(self) -> tuple[tuple[int, ...], ...] | None:
        return self._pairing

    @property
    def name(self) -> str:
        return self._name

    @property
    def description(self) -> dict[str, Any]:
        return json.loads(json.dumps(self._description))

    @property
    def hash(self) -> str:
        """`str`: SHA-256 of the canonical JSON description of the surface."""
        return self._hash

    @property
    def root(self) -> PartitionedSurface:
        """`PartitionedSurface`: The canonical surface this one was built from (itself if canonical)."""
        return self._root or self

    @property
    def is_canonical(self) -> bool:
        return self._root is None

    @property
    def is_totally_separated(self) -> bool:
        return all(len(block) == 1 for block in self._partition)

    def block_of(self, label: str, /) -> int:
        """The 0-based index of the block containing a boundary label."""
        for i, block in enumerate(self._partition):
            if label in block:
                return i
        raise InvalidPartition(f'Unknown boundary `{label}`')

    def boundary_loop(self, label: str, /) -> str:
        return self._spine.boundary_loops[label]

    def boundary_at(self, vertex: str, /) -> str | None:
        """The label of the boundary whose loop sits at ``vertex``, if any."""
        for label, loop in self._spine.boundary_loops.items():
            if self._spine.endpoints[loop][0] == vertex:
                return label
        return None

    def word(self, text: str, /, *, start: str | None = None) -> PathWord:
        """Parses a word on this surface and smooths it.

        Examples
        --------
        >>> S = make_surface(1, [["d1"]])
        >>> w = S.word("x1 y1 ~x1 ~y1")
        >>> w.start, len(w.corners)
        ('H', 4)
        """
        return smooth(parse_word(text, self._spine.endpoints, start=start))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartitionedSurface):
            return NotImplemented
        return self._hash == other._hash

    def __hash__(self) -> int:
        return hash(self._hash)

    def __repr__(self) -> str:
        blocks = ', '.join('{' + ', '.join(block) + '}' for block in self._partition)
        return f'{self.__class__.__name__}(genus={self._genus}, partition=[{blocks}])'


def make_surface(genus: int, blocks: Iterable[Iterable[str]], /, *, name: str | None = None) -> PartitionedSurface:
    """Builds a partitioned surface with its canonical spine and basis.

    The spine has a hub vertex ``H`` carrying, counterclockwise, the
    half-edges ``x_i+, y_i+, x_i-, y_i-`` of each handle followed by the
    tails ``t_1+, ..., t_n+``. Tail ``t_j`` ends at the boundary vertex
    ``q_j`` whose cyclic order is ``t_j-, b_j-, b_j+``, where ``b_j`` is the
    loop running along the ``j``-th boundary (boundaries numbered block by
    block). The single disk face is

    .. math::

       R = \\prod_i x_i \\bar{y}_i \\bar{x}_i y_i \\prod_j t_j \\bar{b}_j \\bar{t}_j

    The basis is the symplectic pairs ``x_i, y_i``, then per block the arcs
    ``h_j = ~t_{d_{j+1}} t_{d_j}`` running from the ``(j+1)``-th to the
    ``j``-th boundary of the block, then per block the partial boundary
    sums ``S_j = t_{d_1} b_{d_1} ~t_{d_1} ... t_{d_j} b_{d_j} ~t_{d_j}``.
    The pairing on this basis is fixed by table: ``i(x_i, y_j) = i(h_i, S_j)
    = delta_ij``, antisymmetric, and zero on every other pair (in
    particular arcs pair trivially with arcs).

    Parameters
    ----------
    genus : `int`
        The genus, a nonnegative integer.

    blocks : `typing.Iterable`
        The partition blocks of boundary labels.

    name : `str`, default=None
        A display name.

    Returns
    -------
    PartitionedSurface
        The surface.

    Raises
    ------
    InvalidPartition
        If the genus is negative, a block is empty, the partition is empty,
        or a label repeats.

    Examples
    --------
    >>> S = make_surface(2, [["d1_1", "d2_1", "d3_1", "d4_1"], ["d1_2", "d2_2"]])
    >>> len(S.basis_words)
    12
    >>> dict(S.basis_words)["h1_2"].text
    '~t3 t2'
    >>> dict(S.basis_words)["S2_1"].text
    't5 b5 ~t5'
    >>> make_surface(1, [["d1"], ["d1"]])
    Traceback (most recent call last):
    ...
    subtorelli.exceptions.InvalidPartition: Boundary `d1` lies in more than one block
    """
    if not isinstance(genus, int) or isinstance(genus, bool) or genus < 0:
        raise InvalidPartition(f'Genus must be a nonnegative integer, got `{genus}`')

    partition = tuple(tuple(block) for block in blocks)
    if not partition:
        raise InvalidPartition('A partitioned surface needs at least one boundary block')
    seen: set[str] = set()
    for block in partition:
        if not block:
            raise InvalidPartition('Partition blocks must be nonempty')
        for label in block:
            if not isinstance(label, str) or not label:
                raise InvalidPartition(f'Boundary labels must be nonempty strings, got `{label}`')
            if label in seen:
                raise InvalidPartition(f'Boundary `{label}` lies in more than one block')
            seen.add(label)

    labels = [label for block in partition for label in block]
    n = len(labels)

    endpoints: dict[str, tuple[str, str]] = {}
    hub: list[str] = []
    for i in range(1, genus + 1):
        endpoints[f'x{i}'] = endpoints[f'y{i}'] = (HUB, HUB)
        hub += [f'x{i}+', f'y{i}+', f'x{i}-', f'y{i}-']
    for j in range(1, n + 1):
        endpoints[f't{j}'] = (HUB, f'q{j}')
        hub.append(f't{j}+')
    for j in range(1, n + 1):
        endpoints[f'b{j}'] = (f'q{j}', f'q{j}')

    rotation = {HUB: hub} | {
        f'q{j}': (f't{j}-', f'b{j}-', f'b{j}+') for j in range(1, n + 1)
    }
    spine = Spine(endpoints, rotation, {label: f'b{j}' for j, label in enumerate(labels, start=1)})

    def w(text: str) -> PathWord:
        return smooth(parse_word(text, spine.endpoints))

    index = {label: j for j, label in enumerate(labels, start=1)}
    closed = [
        (f'{c}{i}', w(f'{c}{i}')) for i in range(1, genus + 1) for c in 'xy'
    ]
    arcs, sums = [], []
    for l, block in enumerate(partition, start=1):
        d = [index[label] for label in block]
        for j in range(1, len(d)):
            arcs.append((f'h{l}_{j}', w(f'~t{d[j]} t{d[j - 1]}')))
            sums.append((
                f'S{l}_{j}',
                w(' '.join(f't{k} b{k} ~t{k}' for k in d[:j]))
            ))

    basis_words = closed + arcs + sums
    size = len(basis_words)
    table = [[0] * size for _ in range(size)]
    for i in range(genus):
        table[2 * i][2 * i + 1], table[2 * i + 1][2 * i] = 1, -1
    for a in range(len(arcs)):
        p, q = 2 * genus + a, 2 * genus + len(arcs) + a
        table[p][q], table[q][p] = 1, -1

    return PartitionedSurface(genus, partition, spine, basis_words, pairing=table, name=name)


def hub_items(surface: PartitionedSurface, /) -> tuple[tuple[str, int], ...]:
    """The items met counterclockwise around the hub: ``("handle", i)`` then ``("tail", j)``.

    Examples
    --------
    >>> hub_items(make_surface(1, [["d1", "d2"]]))
    (('handle', 1), ('tail', 1), ('tail', 2))
    """
    root = surface.root
    return (
        tuple(('handle', i) for i in range(1, root.genus + 1)) +
        tuple(('tail', j) for j in range(1, len(root.boundaries) + 1))
    )


def run_core(surface: PartitionedSurface, first: int, last: int, /) -> PathWord:
    """The closed curve at the hub enclosing the hub items ``first`` to ``last`` (1-based, inclusive).

    Each handle contributes ``x ~y ~x y`` and each tail ``t ~b ~t``; the
    curve is the product of these pieces, a consecutive stretch of the disk
    face of the canonical spine.

    Examples
    --------
    >>> run_core(make_surface(1, [["d1", "d2"]]), 1, 2).text
    'x1 ~y1 ~x1 y1 t1 ~b1 ~t1'
    """
    items = hub_items(surface)
    if not 1 <= first <= last <= len(items):
        raise InvalidPartition(f'No run of hub items from `{first}` to `{last}`')

    pieces = []
    for kind, k in items[first - 1:last]:
        pieces.append(
            f'x{k} ~y{k} ~x{k} y{k}' if kind == 'handle' else f't{k} ~b{k} ~t{k}'
        )

    return surface.word(' '.join(pieces))


def _surface_genus(genus: int, partition: Partition, spine: Spine) -> int:
    # chi = 2 - 2g - (number of boundary components)
    twice = 2 - len([b for block in partition for b in block]) - spine.euler_characteristic
    if twice % 2 or twice // 2 != genus:
        raise InvalidPartition('Spine does not realise the expected genus')
    return genus


class ComplementPiece(NamedTuple):
    """A piece of the target of an embedding lying outside the source."""
    #: Display name of the piece
    name: str
    #: Genus of the piece
    genus: int
    #: Boundary labels of the piece, source side first
    boundaries: tuple[str, ...]
    #: Induced partition of the piece's boundary
    blocks: tuple[tuple[str, ...], ...]
    #: Target basis labels carried by the piece
    basis_labels: tuple[str, ...]


class Embedding:
    """An embedding of partitioned surfaces, with its complement decomposition.

    The embeddings built here extend the source spine: every source edge is
    an edge of the target with the same name, and new edges live in the
    complement. Alongside the generator images an embedding records

    * the totally separated completion ``completion`` through which the
      homology of the target decomposes,
    * the arc systems closing each source arc to a closed curve of the
      completion (``psi``, keyed by arc system name),
    * the target basis labels that carry the completion summand
      (``hat_labels``), and the complement pieces.
    """
    __slots__ = (
        '_source', '_target', '_images', '_completion', '_psi',
        '_hat_labels', '_pieces',
    )

    _source: PartitionedSurface
    _target: PartitionedSurface
    _images: dict[str, PathWord]
    _completion: PartitionedSurface | None
    _psi: dict[str, dict[str, PathWord]]
    _hat_labels: tuple[str, ...]
    _pieces: tuple[ComplementPiece, ...]

    def __new__(
        cls,
        source: PartitionedSurface,
        target: PartitionedSurface,
        images: Mapping[str, PathWord],
        /,
        *,
        completion: PartitionedSurface | None = None,
        psi: Mapping[str, Mapping[str, PathWord]] | None = None,
        hat_labels: Iterable[str] = (),
        pieces: Iterable[ComplementPiece] = ()
    ) -> Embedding:
        """Class constructor.

        Parameters
        ----------
        source, target : `PartitionedSurface`
            The source and target surfaces.

        images : `typing.Mapping`
            Source edge name to its image path in the target.

        completion : `PartitionedSurface`, default=None
            The completion of the source inside the target, when the
            embedding carries a homology decomposition.

        psi : `typing.Mapping`, default=None
            Arc system name to a mapping from source basis label to closed
            representative in ``completion``.

        hat_labels : `typing.Iterable`, default=()
            Target basis labels of the completion summand, in completion
            basis order.

        pieces : `typing.Iterable`, default=()
            The complement pieces.

        Returns
        -------
        Embedding
            The embedding.
        """
        self = super().__new__(cls)
        self._source = source
        self._target = target
        self._images = dict(images)
        self._completion = completion
        self._psi = {name: dict(table) for name, table in (psi or {}).items()}
        self._hat_labels = tuple(hat_labels)
        self._pieces = tuple(pieces)

        return self

    @property
    def source(self) -> PartitionedSurface:
        return self._source

    @property
    def target(self) -> PartitionedSurface:
        return self._target

    @property
    def images(self) -> dict[str, PathWord]:
        return dict(self._images)

    @property
    def completion(self) -> PartitionedSurface:
        if self._completion is None:
            raise DecompositionMismatch('This embedding carries no homology decomposition')
        return self._completion

    @property
    def arc_systems(self) -> tuple[str, ...]:
        return tuple(self._psi)

    def psi_words(self, arcs: str = 'K', /) -> dict[str, PathWord]:
        """Source basis label to its closed representative in the completion."""
        if arcs not in self._psi:
            raise DecompositionMismatch(f'Unknown arc system `{arcs}`')
        return dict(self._psi[arcs])

    @property
    def hat_labels(self) -> tuple[str, ...]:
        return self._hat_labels

    @property
    def pieces(self) -> tuple[ComplementPiece, ...]:
        return self._pieces

    @property
    def is_extension(self) -> bool:
        """`bool`: Whether every source edge maps to the same-named edge of the target."""
        return all(
            image.letters == (edge,) for edge, image in self._images.items()
        )

    def push(self, word: PathWord, /) -> PathWord:
        """The image of a source path in the target.

        Corners are carried over unchanged, which is exact for extensions.
        """
        pieces = [
            invert(self._images[letter_edge(letter)]) if is_inverse(letter)
            else self._images[letter_edge(letter)]
            for letter in word.letters
        ]
        if not pieces:
            return word

        result = functools.reduce(concat, pieces)

        return PathWord(
            result.letters, start=result.start, end=result.end,
            corners=word.corners, cusp=word.cusp, endpoints=result.endpoints
        )


def identity_embedding(source: PartitionedSurface, target: PartitionedSurface | None = None, /) -> Embedding:
    """The embedding sending each source edge to the same-named edge of ``target``.

    With ``target`` omitted this is the identity of ``source``.
    """
    target = target or source
    ends = target.spine.endpoints
    images = {}
    for edge, (s, t) in source.spine.endpoints.items():
        if ends.get(edge) != (s, t):
            raise ConfigError(f'Edge `{edge}` of the source is not an edge of the target')
        images[edge] = PathWord((edge,), start=s, end=t, endpoints=ends)

    return Embedding(source, target, images)


def totally_separated_completion(surface: PartitionedSurface, /) -> tuple[PartitionedSurface, Embedding]:
    """Caps every block of the partition with a holed sphere.

    A block with boundaries ``d_1, ..., d_k`` is capped by a sphere with
    ``k + 1`` holes: a new vertex ``u`` joined to each ``q_{d_j}`` by a cap
    edge ``e_{d_j}`` entering the hole of ``d_j``, and a new boundary loop
    ``z`` at ``u``. The old boundary loops become interior curves and the
    new partition has the singleton blocks ``{z_l}``. The genus grows by
    ``k - 1`` per block.

    Each source arc ``h`` from ``d_a`` to ``d_b`` is closed up in two ways
    inside the cap: the arc system ``"K"`` uses ``e_b ~e_a b_a`` and
    ``"K'"`` uses ``e_b z ~e_a``. The completion's basis is the source basis
    with arcs replaced by their ``"K"`` closures, so the isomorphism for
    ``"K"`` is the identity in coordinates and preserves the pairing.

    Returns
    -------
    tuple
        The completion and the inclusion embedding.

    Examples
    --------
    >>> S = make_surface(2, [["d1_1", "d2_1", "d3_1", "d4_1"], ["d1_2", "d2_2"]])
    >>> T, e = totally_separated_completion(S)
    >>> T.genus, T.partition
    (6, (('z1',), ('z2',)))
    >>> e.psi_words("K")["h1_1"].text
    '~t2 t1 e1 ~e2 b2'
    >>> e.psi_words("K'")["h1_1"].text
    '~t2 t1 e1 z1 ~e2'
    """
    spine = surface.spine
    endpoints = spine.endpoints
    rotation = {v: list(order) for v, order in spine.rotation.items()}
    loops = spine.boundary_loops

    partition: list[tuple[str, ...]] = []
    new_loops: dict[str, str] = {}
    pieces: list[ComplementPiece] = []
    cap_edge: dict[str, str] = {}
    cap_loop: dict[str, str] = {}

    for l, block in enumerate(surface.partition, start=1):
        u = _fresh(rotation, 'u')
        rotation[u] = []
        for label in block:
            loop = loops[label]
            q = endpoints[loop][0]
            e = _fresh(endpoints, 'e')
            endpoints[e] = (q, u)
            order = rotation[q]
            order.insert(order.index(f'{loop}-') + 1, f'{e}+')
            cap_edge[label] = e
        z = _fresh(endpoints, 'z')
        endpoints[z] = (u, u)
        rotation[u] = [f'{cap_edge[label]}-' for label in block] + [f'{z}-', f'{z}+']
        for label in block:
            cap_loop[label] = z
        partition.append((z,))
        new_loops[z] = z
        pieces.append(ComplementPiece(f'cap{l}', 0, block + (z,), (block, (z,)), ()))

    capped = Spine(endpoints, rotation, new_loops)

    def w(text: str) -> PathWord:
        return smooth(parse_word(text, capped.endpoints))

    psi: dict[str, dict[str, PathWord]] = {'K': {}, "K'": {}}
    for label, word in surface.basis_words:
        if word.is_closed:
            psi['K'][label] = psi["K'"][label] = w(word.text)
            continue
        a, b = surface.boundary_at(word.start), surface.boundary_at(word.end)
        psi['K'][label] = w(f'{word.text} {cap_edge[b]} ~{cap_edge[a]} {loops[a]}')
        psi["K'"][label] = w(f'{word.text} {cap_edge[b]} {cap_loop[a]} ~{cap_edge[a]}')

    genus = surface.genus + sum(len(block) - 1 for block in surface.partition)
    completion = PartitionedSurface(
        _surface_genus(genus, tuple(partition), capped),
        partition,
        capped,
        tuple(psi['K'].items()),
        name=f'{surface.name}^',
        description={
            'genus': genus,
            'partition': [list(b) for b in partition],
            'completion_of': surface.description,
        },
        root=surface.root
    )

    ends = completion.spine.endpoints
    images = {
        edge: PathWord((edge,), start=s, end=t, endpoints=ends)
        for edge, (s, t) in spine.endpoints.items()
    }
    embedding = Embedding(
        surface, completion, images,
        completion=completion,
        psi=psi,
        hat_labels=[label for label, _ in completion.basis_words],
        pieces=pieces
    )

    return completion, embedding


def attach_handles(
    surface: PartitionedSurface, boundary: str, /, *, genus: int = 1
) -> tuple[PartitionedSurface, Embedding]:
    """Glues a surface of genus ``genus`` with two boundary components onto a boundary.

    The source must be totally separated. The new piece ``V`` meets the
    source along ``boundary`` and carries the new boundary loop ``zv``
    (which replaces ``boundary`` in the partition) and the handles
    ``xv_i, yv_i``. The target basis is the source basis followed by the
    handle classes of ``V``, so the homology of the target splits as the
    source summand plus the summand of ``V``.

    Raises
    ------
    InvalidPartition
        If the source is not totally separated, the boundary is unknown, or
        the genus is negative.

    Examples
    --------
    >>> S = make_surface(1, [["d1"], ["d2"]])
    >>> T, e = attach_handles(S, "d1")
    >>> T.genus, T.partition
    (2, (('zv1',), ('d2',)))
    >>> [label for label, _ in T.basis_words]
    ['x1', 'y1', 'xv1_1', 'yv1_1']
    """
    if not surface.is_totally_separated:
        raise InvalidPartition(
            'Handles attach to totally separated surfaces only; complete the surface first'
        )
    if boundary not in surface.boundaries:
        raise InvalidPartition(f'Unknown boundary `{boundary}`')
    if not isinstance(genus, int) or genus < 0:
        raise InvalidPartition(f'Genus must be a nonnegative integer, got `{genus}`')

    spine = surface.spine
    endpoints = spine.endpoints
    rotation = {v: list(order) for v, order in spine.rotation.items()}
    loops = spine.boundary_loops

    loop = loops[boundary]
    q = endpoints[loop][0]
    v = _fresh(rotation, 'v')
    p = v[1:]
    c, zv = f'c{p}', f'zv{p}'

    endpoints[c] = (q, v)
    order = rotation[q]
    order.insert(order.index(f'{loop}-') + 1, f'{c}+')
    rotation[v] = [f'{c}-']
    handles = []
    for i in range(1, genus + 1):
        x, y = f'xv{p}_{i}', f'yv{p}_{i}'
        endpoints[x] = endpoints[y] = (v, v)
        rotation[v] += [f'{x}+', f'{y}+', f'{x}-', f'{y}-']
        handles += [x, y]
    endpoints[zv] = (v, v)
    rotation[v] += [f'{zv}-', f'{zv}+']

    new_loops = {label: edge for label, edge in loops.items() if label != boundary}
    new_loops[zv] = zv
    partition = tuple((zv,) if block == (boundary,) else block for block in surface.partition)
    glued = Spine(endpoints, rotation, new_loops)

    def w(text: str) -> PathWord:
        return smooth(parse_word(text, glued.endpoints))

    basis_words = [(label, w(word.text)) for label, word in surface.basis_words]
    basis_words += [(h, w(h)) for h in handles]

    total_genus = surface.genus + genus
    target = PartitionedSurface(
        _surface_genus(total_genus, partition, glued),
        partition,
        glued,
        basis_words,
        name=f'{surface.name}+V{p}',
        description={
            'genus': total_genus,
            'partition': [list(b) for b in partition],
            'attached_to': surface.description,
            'boundary': boundary,
            'handles': genus,
        },
        root=surface.root
    )

    images = {
        edge: PathWord((edge,), start=s, end=t) for edge, (s, t) in spine.endpoints.items()
    }
    identity = {label: word for label, word in surface.basis_words}

    return target, Embedding(
        surface, target, images,
        completion=surface,
        psi={'K': identity, "K'": identity},
        hat_labels=[label for label, _ in surface.basis_words],
        pieces=[ComplementPiece(f'V{p}', genus, (boundary, zv), ((boundary,), (zv,)), tuple(handles))]
    )


def compose(first: Embedding, second: Embedding, /) -> Embedding:
    """Composes ``first: A -> B`` with ``second: B -> C``.

    ``second`` must be an embedding of a totally separated surface (as made
    by :py:func:`attach_handles` or a further composition of such), so that
    the completion of ``A`` and its arc systems carry over from ``first``.
    """
    if first.target != second.source:
        raise ConfigError('Embeddings do not compose: target and source differ')
    if second.completion != second.source:
        raise ConfigError('The second embedding must start from a totally separated surface')

    images = {edge: second.push(image) for edge, image in first.images.items()}
    position = {label: i for i, label in enumerate(l for l, _ in second.source.basis_words)}
    hat = [second.hat_labels[position[label]] for label in first.hat_labels]

    return Embedding(
        first.source, second.target, images,
        completion=first.completion,
        psi={name: first.psi_words(name) for name in first.arc_systems},
        hat_labels=hat,
        pieces=first.pieces + second.pieces
    )


def standard_certificates(surface: PartitionedSurface, /) -> list[PathWord]:
    """The finite certificate family used to test that separating curves stay separating.

    All closed basis representatives, the hub run curves that are
    separating in :math:`H_1^{\\mathcal{P}}`, and all products of two such
    separating run curves. Only a finite family, so a passing check is
    evidence, not proof.
    """
    from subtorelli.homology import class_of

    basis = [word for _, word in surface.basis_words if word.is_closed]
    items = len(hub_items(surface))
    runs = [
        run_core(surface, a, b)
        for a in range(1, items + 1) for b in range(a, items + 1)
        if (a, b) != (1, items)
    ]
    separating = [c for c in runs if class_of(c, surface).is_zero]
    products = [
        concat(c, d) for c, d in itertools.combinations(separating, 2)
    ]

    return basis + separating + products


def check_embedding(embedding: Embedding, certificates: Iterable[PathWord], /) -> bool:
    """Checks the two conditions of a morphism of partitioned surfaces on a finite family.

    True iff (a) every certificate that is null in :math:`H_1^{\\mathcal{P}}`
    of the source maps to a curve null in :math:`H_1^{\\mathcal{P}'}` of the
    target, and (b) every source boundary either is a target boundary or
    lies on exactly one complement piece.

    Raises
    ------
    NotAClosedCurve
        If a certificate is an arc.
    """
    from subtorelli.homology import class_of

    certificates = list(certificates)
    for c in certificates:
        if not c.is_closed:
            raise NotAClosedCurve(f'Certificate `{c.text}` is not a closed curve')

    for c in certificates:
        if class_of(c, embedding.source).is_zero and not class_of(embedding.push(c), embedding.target).is_zero:
            return False

    target_boundaries = set(embedding.target.boundaries)
    for label in embedding.source.boundaries:
        hits = sum(label in piece.boundaries for piece in embedding.pieces)
        if hits + (label in target_boundaries) != 1:
            return False

    return True


def surface_from_json(data: Mapping[str, Any], /) -> PartitionedSurface:
    """Builds a surface from its JSON description ``{"genus": g, "partition": [[...], ...]}``.

    Raises
    ------
    ConfigError
        If a required key is missing.
    """
    try:
        genus, partition = data['genus'], data['partition']
    except (KeyError, TypeError):
        raise ConfigError('A surface description needs `genus` and `partition`')

    return make_surface(genus, partition, name=data.get('name'))


def load_surface(source: str | Path, /) -> PartitionedSurface:
    """Loads a surface from a JSON file, or from a shipped fixture by bare name.

    Raises
    ------
    ConfigError
        If the file cannot be read or parsed.
    """
    path = Path(source)
    if not path.is_file():
        path = fixture_path(str(source))
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f'Cannot read surface file `{path}`: {e}')

    return surface_from_json(data)


if __name__ == "__main__":      # pragma: no cover
    # Doctest the module from the project root using
    #
    #     python -m doctest -v src/subtorelli/surface.py
    #
    import doctest
    doctest.testmod()
