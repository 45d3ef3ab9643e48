from __future__ import annotations


__all__ = [
    'Basis',
    'Cochain',
    'HClass',
    'Wedge3',
    'basis_of',
    'class_of',
    'contract_C',
    'dual_D',
    'dual_D_inv',
    'include_s',
    'intersection',
    'pair',
    'project_r',
    'psi_K',
    'psi_K_inv',
    'psi_star',
    'psi_star_inv',
    'pullback',
    'r_star',
    'wedge',
]


# -- IMPORTS --

# -- Standard libraries --
import functools
import itertools
import sys

from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

# -- 3rd party libraries --
import sympy

# -- Internal libraries --
sys.path.insert(0, str(Path(__file__).parent.parent))

from subtorelli.exceptions import (
    ArcAcrossBlocks,
    DecompositionMismatch,
    NotAClosedCurve,
    SubtorelliError,
)
from subtorelli.surface import (
    Embedding,
    PartitionedSurface,
    Spine,
)
from subtorelli.utils import (
    ExactSolver,
    integer_inverse,
)
from subtorelli.words import (
    PathWord,
    is_inverse,
    letter_edge,
)


def _face_chain(face: Sequence[str]) -> dict[str, int]:
    chain: dict[str, int] = {}
    for letter in face:
        edge = letter_edge(letter)
        chain[edge] = chain.get(edge, 0) + (-1 if is_inverse(letter) else 1)
    return chain


def _outflows(chain: Mapping[str, int], order: Sequence[str]) -> list[int]:
    return [
        chain.get(h[:-1], 0) * (1 if h.endswith('+') else -1) for h in order
    ]


def intersection(a: Mapping[str, int], b: Mapping[str, int], spine: Spine, /) -> int:
    """The algebraic intersection number of two 1-cycles on a ribbon graph.

    The cycles are pushed off each other near every vertex using the cyclic
    orders: at a vertex ``v`` with half-edges ``h`` in counterclockwise
    order, and outflows ``alpha_h`` and ``beta_h`` of the two cycles along
    them,

    .. math::

       I_v = -\\Big[\\sum_{k < h} \\alpha_h \\beta_k + \\sum_{h \\text{ incoming}} \\alpha_h \\beta_h\\Big]

    and the intersection number is the sum over vertices. The value is
    antisymmetric and depends only on the homology classes.

    Raises
    ------
    NotAClosedCurve
        If either chain is not a cycle.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> spine = make_surface(1, [["d1"]]).spine
    >>> intersection({"x1": 1}, {"y1": 1}, spine)
    1
    >>> intersection({"y1": 1}, {"x1": 1}, spine)
    -1
    """
    total = 0
    for order in spine.rotation.values():
        alpha, beta = _outflows(a, order), _outflows(b, order)
        if sum(alpha) or sum(beta):
            raise NotAClosedCurve('Intersection numbers are defined on cycles only')
        below = 0
        for h, x, y in zip(order, alpha, beta):
            total -= x * below
            below += y
            if h.endswith('-'):
                total -= x * y

    return total


class Basis:
    """The distinguished basis of :math:`H_1^{\\mathcal{P}}(\\Sigma;\\mathbb{Z})` of a surface.

    Holds the basis labels and representatives, the intersection pairing
    matrix and an exact solver that expresses any admissible chain in the
    basis, modulo the relations of the surface: the disk faces of the spine
    and, for each block, the sum of its boundary loops. Obtain instances
    through :py:func:`basis_of`, which caches one per surface.
    """
    __slots__ = ('_surface', '_labels', '_words', '_edges', '_solver', '_pairing', '_inverse')

    _surface: PartitionedSurface
    _labels: tuple[str, ...]
    _words: tuple[PathWord, ...]
    _edges: tuple[str, ...]
    _solver: ExactSolver
    _pairing: tuple[tuple[int, ...], ...]
    _inverse: tuple[tuple[int, ...], ...]

    def __new__(cls, surface: PartitionedSurface, /) -> Basis:
        """Class constructor.

        Raises
        ------
        SubtorelliError
            If the representatives are dependent modulo the relations, or
            the pairing is not unimodular.
        """
        self = super().__new__(cls)
        self._surface = surface
        self._labels = tuple(label for label, _ in surface.basis_words)
        self._words = tuple(word for _, word in surface.basis_words)
        self._edges = surface.spine.edges

        relations = [_face_chain(face) for face in surface.spine.disk_faces]
        loops = surface.spine.boundary_loops
        relations += [{loops[label]: 1 for label in block} for block in surface.partition]
        columns = [self._vector(word.chain()) for word in self._words]
        columns += [self._vector(chain) for chain in relations]
        self._solver = ExactSolver(columns, rows=len(self._edges))
        if self._solver.pivots[:len(self._words)] != tuple(range(len(self._words))):
            raise SubtorelliError(
                f'Basis representatives of `{surface.name}` are dependent in homology'
            )

        if surface.pairing_table is not None:
            self._pairing = surface.pairing_table
        else:
            chains = [word.chain() for word in self._words]
            self._pairing = tuple(
                tuple(intersection(a, b, surface.spine) for b in chains) for a in chains
            )
        try:
            self._inverse = tuple(tuple(row) for row in integer_inverse(self._pairing))
        except ValueError as e:
            raise SubtorelliError(f'Pairing of `{surface.name}` is not unimodular: {e}')

        return self

    def _vector(self, chain: Mapping[str, int]) -> list[int]:
        return [chain.get(e, 0) for e in self._edges]

    @property
    def surface(self) -> PartitionedSurface:
        return self._surface

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def words(self) -> tuple[PathWord, ...]:
        return self._words

    @property
    def size(self) -> int:
        return len(self._labels)

    @property
    def pairing(self) -> tuple[tuple[int, ...], ...]:
        """`tuple`: The matrix ``i(e_p, e_q)`` of the basis."""
        return self._pairing

    @property
    def inverse_pairing(self) -> tuple[tuple[int, ...], ...]:
        return self._inverse

    def index(self, label: str, /) -> int:
        try:
            return self._labels.index(label)
        except ValueError:
            raise DecompositionMismatch(
                f'`{label}` is not a basis label of `{self._surface.name}`'
            )

    def element(self, label: str, /) -> HClass:
        coords = [0] * self.size
        coords[self.index(label)] = 1
        return HClass(self, coords)

    def zero(self) -> HClass:
        return HClass(self, [0] * self.size)

    def coordinates(self, chain: Mapping[str, int], /) -> tuple[int, ...] | None:
        """Basis coordinates of an admissible chain, or :py:data:`None` if it is not one."""
        solution = self._solver.solve(self._vector(chain))
        if solution is None:
            return None
        coords = solution[:self.size]
        if any(c.denominator != 1 for c in coords):
            raise SubtorelliError('Chain has non-integral basis coordinates')

        return tuple(int(c) for c in coords)


@functools.cache
def basis_of(surface: PartitionedSurface, /) -> Basis:
    """The cached :py:class:`Basis` of a surface.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> B = basis_of(make_surface(1, [["d1", "d2"]]))
    >>> B.labels
    ('x1', 'y1', 'h1_1', 'S1_1')
    >>> B.pairing
    ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))
    """
    return Basis(surface)


class HClass:
    """An element of :math:`H_1^{\\mathcal{P}}(\\Sigma;\\mathbb{Z})` in basis coordinates."""
    __slots__ = ('_basis', '_coords')

    _basis: Basis
    _coords: tuple[int, ...]

    def __new__(cls, basis: Basis, coords: Iterable[int], /) -> HClass:
        """Class constructor.

        Raises
        ------
        DecompositionMismatch
            If the number of coordinates is not the rank of the basis.
        """
        self = super().__new__(cls)
        self._basis = basis
        self._coords = tuple(int(c) for c in coords)
        if len(self._coords) != basis.size:
            raise DecompositionMismatch(
                f'Expected {basis.size} coordinates, got {len(self._coords)}'
            )

        return self

    @property
    def basis(self) -> Basis:
        return self._basis

    @property
    def surface(self) -> PartitionedSurface:
        return self._basis.surface

    @property
    def coords(self) -> tuple[int, ...]:
        return self._coords

    @property
    def is_zero(self) -> bool:
        return not any(self._coords)

    def as_dict(self) -> dict[str, int]:
        """Nonzero coordinates keyed by basis label."""
        return {label: c for label, c in zip(self._basis.labels, self._coords) if c}

    def _check(self, other: HClass) -> None:
        if other._basis.surface != self._basis.surface:
            raise DecompositionMismatch('Classes live on different surfaces')

    def __add__(self, other: HClass) -> HClass:
        self._check(other)
        return HClass(self._basis, (a + b for a, b in zip(self._coords, other._coords)))

    def __sub__(self, other: HClass) -> HClass:
        return self + (-other)

    def __neg__(self) -> HClass:
        return HClass(self._basis, (-a for a in self._coords))

    def __mul__(self, n: int) -> HClass:
        return HClass(self._basis, (n * a for a in self._coords))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HClass):
            return NotImplemented
        return self._basis.surface == other._basis.surface and self._coords == other._coords

    def __hash__(self) -> int:
        return hash((self._basis.surface, self._coords))

    def __repr__(self) -> str:
        terms = ' + '.join(f'{c}*[{label}]' for label, c in self.as_dict().items()) or '0'
        return f'{self.__class__.__name__}({terms})'


class Cochain:
    """An element of :math:`H^1(\\Sigma;\\mathbb{Z})`, stored as its values on the basis."""
    __slots__ = ('_basis', '_values')

    _basis: Basis
    _values: tuple[int, ...]

    def __new__(cls, basis: Basis, values: Iterable[int], /) -> Cochain:
        self = super().__new__(cls)
        self._basis = basis
        self._values = tuple(int(v) for v in values)
        if len(self._values) != basis.size:
            raise DecompositionMismatch(
                f'Expected {basis.size} values, got {len(self._values)}'
            )

        return self

    @property
    def basis(self) -> Basis:
        return self._basis

    @property
    def surface(self) -> PartitionedSurface:
        return self._basis.surface

    @property
    def values(self) -> tuple[int, ...]:
        return self._values

    @property
    def is_zero(self) -> bool:
        return not any(self._values)

    def as_dict(self) -> dict[str, int]:
        """All values keyed by basis label."""
        return dict(zip(self._basis.labels, self._values))

    def __call__(self, a: HClass, /) -> int:
        if a.surface != self.surface:
            raise DecompositionMismatch('Cochain and class live on different surfaces')
        return sum(v * c for v, c in zip(self._values, a.coords))

    def __add__(self, other: Cochain) -> Cochain:
        if other.surface != self.surface:
            raise DecompositionMismatch('Cochains live on different surfaces')
        return Cochain(self._basis, (a + b for a, b in zip(self._values, other._values)))

    def __neg__(self) -> Cochain:
        return Cochain(self._basis, (-a for a in self._values))

    def __sub__(self, other: Cochain) -> Cochain:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.surface == other.surface and self._values == other._values

    def __hash__(self) -> int:
        return hash((self.surface, self._values))

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self.as_dict()})'


def _permutation_sign(triple: Sequence[int]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(3), 2) if triple[i] > triple[j])
    return -1 if inversions % 2 else 1


class Wedge3:
    """An element of :math:`\\wedge^3 H` in the basis ``e_p ^ e_q ^ e_r`` with ``p < q < r``."""
    __slots__ = ('_basis', '_terms')

    _basis: Basis
    _terms: dict[tuple[int, int, int], int]

    def __new__(cls, basis: Basis, terms: Mapping[tuple[int, int, int], int] | None = None, /) -> Wedge3:
        """Class constructor.

        Index triples are sorted on construction, with the sign of the
        sorting permutation; triples with a repeated index vanish.
        """
        self = super().__new__(cls)
        self._basis = basis
        collected: dict[tuple[int, int, int], int] = {}
        for triple, coeff in (terms or {}).items():
            if len(set(triple)) < 3 or not coeff:
                continue
            key = tuple(sorted(triple))
            collected[key] = collected.get(key, 0) + _permutation_sign(triple) * coeff
        self._terms = {k: v for k, v in sorted(collected.items()) if v}

        return self

    @classmethod
    def of_labels(cls, basis: Basis, a: str, b: str, c: str, /) -> Wedge3:
        """The basis trivector ``a ^ b ^ c`` named by basis labels."""
        return cls(basis, {(basis.index(a), basis.index(b), basis.index(c)): 1})

    @property
    def basis(self) -> Basis:
        return self._basis

    @property
    def terms(self) -> dict[tuple[int, int, int], int]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def as_list(self) -> list[dict[str, Any]]:
        labels = self._basis.labels
        return [
            {'wedge': [labels[p], labels[q], labels[r]], 'coefficient': c}
            for (p, q, r), c in self._terms.items()
        ]

    def __add__(self, other: Wedge3) -> Wedge3:
        if other._basis.surface != self._basis.surface:
            raise DecompositionMismatch('Trivectors live on different surfaces')
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms.get(k, 0) + v
        return Wedge3(self._basis, terms)

    def __mul__(self, n: int) -> Wedge3:
        return Wedge3(self._basis, {k: n * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> Wedge3:
        return self * -1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Wedge3):
            return NotImplemented
        return self._basis.surface == other._basis.surface and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._basis.surface, tuple(self._terms.items())))

    def __repr__(self) -> str:
        labels = self._basis.labels
        text = ' + '.join(
            f'{c}*{labels[p]}^{labels[q]}^{labels[r]}' for (p, q, r), c in self._terms.items()
        )
        return f'{self.__class__.__name__}({text or "0"})'


def wedge(a: HClass, b: HClass, c: HClass, /) -> Wedge3:
    """The trivector ``a ^ b ^ c``, expanded multilinearly in the basis.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> B = basis_of(make_surface(2, [["d1"]]))
    >>> x1, y1, x2 = B.element("x1"), B.element("y1"), B.element("x2")
    >>> wedge(x1, y1, x2) == -wedge(y1, x1, x2)
    True
    >>> wedge(x1, x1 + y1, x2) == wedge(x1, y1, x2)
    True
    """
    basis = a.basis
    terms: dict[tuple[int, int, int], int] = {}
    for (p, u), (q, v), (r, w) in itertools.product(
        *(((i, x) for i, x in enumerate(h.coords) if x) for h in (a, b, c))
    ):
        terms[(p, q, r)] = terms.get((p, q, r), 0) + u * v * w

    return Wedge3(basis, terms)


def class_of(word: PathWord, surface: PartitionedSurface, /) -> HClass:
    """The class in :math:`H_1^{\\mathcal{P}}` of a closed curve or of an arc within a block.

    Parameters
    ----------
    word : `PathWord`
        A closed path, or an arc between the basepoints of two boundary
        components of the same block.

    surface : `PartitionedSurface`
        The surface.

    Returns
    -------
    HClass
        The class.

    Raises
    ------
    ArcAcrossBlocks
        If the word is an arc whose endpoints are not boundary basepoints of
        one block.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> S = make_surface(1, [["d1", "d2"]])
    >>> class_of(S.word("x1 y1 ~x1"), S)
    HClass(1*[y1])
    >>> class_of(S.word("t2 b2 ~t2"), S)
    HClass(-1*[S1_1])
    >>> class_of(S.word("b2 ~t2 t1"), S)
    HClass(1*[h1_1] + -1*[S1_1])
    >>> T = make_surface(1, [["d1"], ["d2"]])
    >>> class_of(T.word("~t2 t1"), T)
    Traceback (most recent call last):
    ...
    subtorelli.exceptions.ArcAcrossBlocks: Arc `~t2 t1` joins boundaries `d2` and `d1` in different blocks
    """
    if not word.is_closed:
        a, b = surface.boundary_at(word.start), surface.boundary_at(word.end)
        if a is None or b is None:
            raise ArcAcrossBlocks(
                f'Arc `{word.text}` does not run between boundary basepoints'
            )
        if surface.block_of(a) != surface.block_of(b):
            raise ArcAcrossBlocks(
                f'Arc `{word.text}` joins boundaries `{a}` and `{b}` in different blocks'
            )

    basis = basis_of(surface)
    coords = basis.coordinates(word.chain())
    if coords is None:
        raise SubtorelliError(f'Word `{word.text}` does not define a class on `{surface.name}`')

    return HClass(basis, coords)


def pair(a: HClass, b: HClass, /) -> int:
    """The intersection pairing ``i(a, b)`` read off the basis pairing matrix."""
    if a.surface != b.surface:
        raise DecompositionMismatch('Classes live on different surfaces')
    omega = a.basis.pairing

    return sum(
        u * omega[p][q] * v
        for p, u in enumerate(a.coords) if u
        for q, v in enumerate(b.coords) if v
    )


def dual_D(a: HClass, /) -> Cochain:
    """The Poincaré-Lefschetz dual ``D(a) = i(., a)``.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> B = basis_of(make_surface(1, [["d1"]]))
    >>> dual_D(B.element("x1")).as_dict()
    {'x1': 0, 'y1': -1}
    """
    omega = a.basis.pairing

    return Cochain(a.basis, (
        sum(omega[p][q] * c for q, c in enumerate(a.coords)) for p in range(a.basis.size)
    ))


def dual_D_inv(c: Cochain, /) -> HClass:
    """The inverse of :py:func:`dual_D`."""
    inverse = c.basis.inverse_pairing

    return HClass(c.basis, (
        sum(inverse[p][q] * v for q, v in enumerate(c.values)) for p in range(c.basis.size)
    ))


def contract_C(w: Wedge3, /) -> HClass:
    """The contraction ``C(a ^ b ^ c) = 2[(a.b)c + (b.c)a + (c.a)b]``.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> B = basis_of(make_surface(2, [["d1"]]))
    >>> contract_C(Wedge3.of_labels(B, "x1", "y1", "x2"))
    HClass(2*[x2])
    >>> contract_C(Wedge3.of_labels(B, "x1", "x2", "y2"))
    HClass(2*[x1])
    """
    basis = w.basis
    omega = basis.pairing
    coords = [0] * basis.size
    for (p, q, r), k in w.terms.items():
        coords[r] += 2 * k * omega[p][q]
        coords[p] += 2 * k * omega[q][r]
        coords[q] += 2 * k * omega[r][p]

    return HClass(basis, coords)


def _expect(x: HClass | Cochain, surface: PartitionedSurface, role: str) -> None:
    if x.surface != surface:
        raise DecompositionMismatch(
            f'Expected a {role} on `{surface.name}`, got one on `{x.surface.name}`'
        )


@functools.cache
def _psi_matrices(embedding: Embedding, arcs: str) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    source = basis_of(embedding.source)
    words = embedding.psi_words(arcs)
    columns = [class_of(words[label], embedding.completion).coords for label in source.labels]
    size = len(columns)
    matrix = tuple(tuple(columns[j][i] for j in range(size)) for i in range(size))
    try:
        inverse = tuple(tuple(row) for row in integer_inverse(matrix))
    except ValueError as e:
        raise DecompositionMismatch(f'Arc system `{arcs}` does not give an isomorphism: {e}')

    return matrix, inverse


def psi_K(a: HClass, embedding: Embedding, /, *, arcs: str = 'K') -> HClass:
    """The isomorphism to the homology of the completion closing arcs by an arc system.

    Examples
    --------
    >>> from subtorelli.surface import make_surface, totally_separated_completion
    >>> S = make_surface(1, [["d1", "d2"]])
    >>> T, e = totally_separated_completion(S)
    >>> h = basis_of(S).element("h1_1")
    >>> psi_K(h, e)
    HClass(1*[h1_1])
    >>> psi_K(h, e, arcs="K'")
    HClass(1*[h1_1] + 1*[S1_1])
    """
    _expect(a, embedding.source, 'class')
    matrix, _ = _psi_matrices(embedding, arcs)

    return HClass(basis_of(embedding.completion), (
        sum(row[j] * c for j, c in enumerate(a.coords)) for row in matrix
    ))


def psi_K_inv(b: HClass, embedding: Embedding, /, *, arcs: str = 'K') -> HClass:
    _expect(b, embedding.completion, 'class')
    _, inverse = _psi_matrices(embedding, arcs)

    return HClass(basis_of(embedding.source), (
        sum(row[j] * c for j, c in enumerate(b.coords)) for row in inverse
    ))


def psi_star(c: Cochain, embedding: Embedding, /, *, arcs: str = 'K') -> Cochain:
    """The pullback ``c o psi_K`` of a cochain on the completion."""
    _expect(c, embedding.completion, 'cochain')
    matrix, _ = _psi_matrices(embedding, arcs)
    size = len(matrix)

    return Cochain(basis_of(embedding.source), (
        sum(c.values[k] * matrix[k][i] for k in range(size)) for i in range(size)
    ))


def psi_star_inv(c: Cochain, embedding: Embedding, /, *, arcs: str = 'K') -> Cochain:
    """The inverse of :py:func:`psi_star`: ``c o psi_K^-1``."""
    _expect(c, embedding.source, 'cochain')
    _, inverse = _psi_matrices(embedding, arcs)
    size = len(inverse)

    return Cochain(basis_of(embedding.completion), (
        sum(c.values[k] * inverse[k][i] for k in range(size)) for i in range(size)
    ))


def _hat_indices(embedding: Embedding) -> list[int]:
    target = basis_of(embedding.target)
    return [target.index(label) for label in embedding.hat_labels]


def project_r(a: HClass, embedding: Embedding, /) -> HClass:
    """The projection of the target homology onto the summand of the completion.

    Complement piece coordinates are dropped; on the completion summand the
    map is the identity.
    """
    _expect(a, embedding.target, 'class')

    return HClass(basis_of(embedding.completion), (a.coords[i] for i in _hat_indices(embedding)))


def include_s(b: HClass, embedding: Embedding, /) -> HClass:
    """The inclusion of the completion summand into the target homology."""
    _expect(b, embedding.completion, 'class')
    coords = [0] * basis_of(embedding.target).size
    for i, c in zip(_hat_indices(embedding), b.coords):
        coords[i] = c

    return HClass(basis_of(embedding.target), coords)


def r_star(c: Cochain, embedding: Embedding, /) -> Cochain:
    """The dual of :py:func:`project_r`: ``c o r``, zero on complement classes."""
    _expect(c, embedding.completion, 'cochain')
    values = [0] * basis_of(embedding.target).size
    for i, v in zip(_hat_indices(embedding), c.values):
        values[i] = v

    return Cochain(basis_of(embedding.target), values)


def pullback(c: Cochain, embedding: Embedding, /, *, arcs: str = 'K') -> Cochain:
    """The map induced on cochains by an embedding, ``r^* o (psi_K^*)^-1``.

    Carries a cochain on the source to a cochain on the target.
    """
    return r_star(psi_star_inv(c, embedding, arcs=arcs), embedding)


if __name__ == "__main__":      # pragma: no cover
    # Doctest the module from the project root using
    #
    #     python -m doctest -v src/subtorelli/homology.py
    #
    import doctest
    doctest.testmod()
