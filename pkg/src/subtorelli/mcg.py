from __future__ import annotations


__all__ = [
    'Catalog',
    'MappingClass',
    'TwistGenerator',
    'acts_trivially_on_H1P',
    'apply',
    'is_P_bounding_pair',
    'is_P_separating',
    'load_catalog',
    'random_word',
    'standard_catalog',
    'torelli_generators',
    'torelli_violation',
    'validate_generator',
]


# -- IMPORTS --

# -- Standard libraries --
import json
import random
import re
import sys

from pathlib import Path
from typing import Any, Iterable, Iterator, Mapping, Sequence

# -- 3rd party libraries --

# -- Internal libraries --
sys.path.insert(0, str(Path(__file__).parent.parent))

from subtorelli.exceptions import (
    ConfigError,
    InvalidWord,
    NotAClosedCurve,
)
from subtorelli.homology import (
    class_of,
    pair,
)
from subtorelli.surface import (
    PartitionedSurface,
    fixture_path,
    hub_items,
    run_core,
)
from subtorelli.words import (
    Corner,
    Letter,
    PathWord,
    cyclic_reduce,
    inverse_letter,
    is_inverse,
    letter_edge,
    reduce_letters,
)


TOKEN = re.compile(r'^(?P<name>[A-Za-z][\w.]*)(\^(?P<exp>-?\d+))?$')


def _proportion(difference: Mapping[str, int], core: Mapping[str, int]) -> int | None:
    if not difference:
        return 0
    if not core:
        return None
    edge, c = next(iter(core.items()))
    alpha, remainder = divmod(difference.get(edge, 0), c)
    if remainder or any(difference.get(e, 0) != alpha * k for e, k in core.items()):
        return None
    if set(difference) - set(core):
        return None

    return alpha


class TwistGenerator:
    """A mapping class given by its action on the edges of the spine.

    The action is a table sending each moved edge to a path with the same
    endpoints; edges missing from the table are fixed, so a generator built
    on a surface extends by the identity to any surface built from it. Each
    image differs from its edge, as a 1-chain, by a multiple ``alpha(e)``
    of the core curve, and the image of ``e`` carries ``alpha(e)`` copies of
    the corners of the smooth core. Through these corners the winding of the
    image of any curve changes by ``sum_e alpha(e) w(core)`` over its edges.
    A negative ``alpha(e)`` runs the core backwards and carries its corners
    with the opposite sign: ``Tx1`` sends ``y1`` to ``~x1 y1``, with
    ``alpha = -1``, and so adds ``-w(x1)`` to the winding of ``y1``.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> S = make_surface(1, [["d1", "d2"]])
    >>> T = TwistGenerator(
    ...     "Tb1", S.word("b1"),
    ...     {"t1": S.word("t1 b1")}, {"t1": S.word("t1 ~b1")},
    ...     kind="boundary"
    ... )
    >>> T
    TwistGenerator("Tb1")
    >>> T.alpha
    {'t1': 1}
    >>> T.act(S.word("~t2 t1")).text
    '~t2 t1 b1'
    """
    __slots__ = ('_name', '_kind', '_core', '_forward', '_backward', '_alpha')

    _name: str
    _kind: str
    _core: PathWord
    _forward: dict[str, PathWord]
    _backward: dict[str, PathWord]
    _alpha: dict[str, int]

    def __new__(
        cls,
        name: str,
        core: PathWord,
        forward: Mapping[str, PathWord],
        backward: Mapping[str, PathWord],
        /,
        *,
        kind: str = 'twist'
    ) -> TwistGenerator:
        """Class constructor.

        Parameters
        ----------
        name : `str`
            The generator name used in word strings.

        core : `PathWord`
            The smoothed closed core curve.

        forward, backward : `typing.Mapping`
            Edge name to image path under the generator and under its
            inverse.

        kind : `str`, default="twist"
            A free-form kind tag, e.g. ``"handle"``, ``"boundary"``, ``"run"``.

        Returns
        -------
        TwistGenerator
            The generator.

        Raises
        ------
        ConfigError
            If the core is not closed, the two tables move different edges,
            or some image does not differ from its edge by a multiple of
            the core (with opposite multiples in the two tables).
        """
        if not core.is_closed:
            raise ConfigError(f'Core of `{name}` must be a closed curve')
        if set(forward) != set(backward):
            raise ConfigError(f'Tables of `{name}` and its inverse move different edges')

        self = super().__new__(cls)
        self._name = name
        self._kind = kind
        self._core = core
        self._alpha = {}
        c = core.chain()
        for edge in forward:
            alpha = _proportion(_difference(forward[edge], edge), c)
            if alpha is None or _proportion(_difference(backward[edge], edge), c) != -alpha:
                raise ConfigError(
                    f'Image of `{edge}` under `{name}` is not the edge plus a multiple of its core'
                )
            self._alpha[edge] = alpha

        corners = core.corners
        self._forward = {
            e: forward[e].with_corners({k: a * v for k, v in corners.items()})
            for e, a in self._alpha.items()
        }
        self._backward = {
            e: backward[e].with_corners({k: -a * v for k, v in corners.items()})
            for e, a in self._alpha.items()
        }

        return self

    @property
    def name(self) -> str:
        return self._name

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def core(self) -> PathWord:
        return self._core

    @property
    def alpha(self) -> dict[str, int]:
        """`dict`: The multiple of the core added to each moved edge."""
        return dict(self._alpha)

    @property
    def table(self) -> dict[str, PathWord]:
        return dict(self._forward)

    @property
    def inverse_table(self) -> dict[str, PathWord]:
        return dict(self._backward)

    def act(self, word: PathWord, exponent: int = 1, /) -> PathWord:
        """The image of a path under the generator (``exponent=1``) or its inverse (``-1``)."""
        table = self._forward if exponent > 0 else self._backward
        letters: list[Letter] = []
        corners: list[tuple[Corner, int]] = list(word.corners.items())

        for letter in word.letters:
            image = table.get(letter_edge(letter))
            if image is None:
                letters.append(letter)
            elif is_inverse(letter):
                letters += [inverse_letter(x) for x in reversed(image.letters)]
                corners += [(k, -v) for k, v in image.corners.items()]
            else:
                letters += image.letters
                corners += image.corners.items()

        return PathWord(
            letters, start=word.start, end=word.end, corners=corners, cusp=word.cusp,
            endpoints=word.endpoints
        )

    def to_json(self) -> dict[str, Any]:
        return {
            'name': self._name,
            'kind': self._kind,
            'core': self._core.text,
            'forward': {e: w.text for e, w in self._forward.items()},
            'backward': {e: w.text for e, w in self._backward.items()},
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistGenerator):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __hash__(self) -> int:
        return hash(self._name)

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}("{self._name}")'


def _difference(image: PathWord, edge: str) -> dict[str, int]:
    chain = image.chain()
    chain[edge] = chain.get(edge, 0) - 1

    return {e: c for e, c in chain.items() if c}


class MappingClass:
    """A finite word in twist generators and their inverses, read as a composition.

    The word ``"A B^-1"`` is the composition ``A o B^-1``: when applied to a
    curve the rightmost generator acts first.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> cat = standard_catalog(make_surface(1, [["d1", "d2"]]))
    >>> f = cat.parse("Tb1 Tb2^-1")
    >>> f
    MappingClass("Tb1 Tb2^-1")
    >>> f.inverse()
    MappingClass("Tb2 Tb1^-1")
    >>> len(f * f)
    4
    """
    __slots__ = ('_word',)

    _word: tuple[tuple[TwistGenerator, int], ...]

    def __new__(cls, word: Iterable[tuple[TwistGenerator, int]] = (), /) -> MappingClass:
        self = super().__new__(cls)
        self._word = tuple((g, 1 if e > 0 else -1) for g, e in word)

        return self

    @property
    def word(self) -> tuple[tuple[TwistGenerator, int], ...]:
        return self._word

    @property
    def text(self) -> str:
        return ' '.join(
            g.name if e > 0 else f'{g.name}^-1' for g, e in self._word
        ) or 'id'

    @property
    def is_identity(self) -> bool:
        return not self._word

    def inverse(self) -> MappingClass:
        return MappingClass((g, -e) for g, e in reversed(self._word))

    def __mul__(self, other: MappingClass) -> MappingClass:
        return MappingClass(self._word + other._word)

    def __call__(self, word: PathWord, /) -> PathWord:
        return apply(self, word)

    def __len__(self) -> int:
        return len(self._word)

    def __iter__(self) -> Iterator[tuple[TwistGenerator, int]]:
        return iter(self._word)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MappingClass):
            return NotImplemented
        return self._word == other._word

    def __hash__(self) -> int:
        return hash(self.text)

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}("{self.text}")'


def apply(f: MappingClass, word: PathWord, /) -> PathWord:
    """The image of a path under a mapping class, rightmost generator first.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> S = make_surface(1, [["d1"]])
    >>> cat = standard_catalog(S)
    >>> apply(cat.parse("Tx1"), S.word("y1")).text
    '~x1 y1'
    >>> apply(cat.parse("Ty1 Tx1"), S.word("y1")).text
    '~y1 ~x1 y1'
    """
    for generator, exponent in reversed(f.word):
        word = generator.act(word, exponent)

    return word


class Catalog:
    """The named twist generators of a canonical surface, with word aliases.

    Aliases name words in the generators (or in other aliases) and may be
    used anywhere a generator name is accepted.
    """
    __slots__ = ('_surface', '_generators', '_aliases')

    _surface: PartitionedSurface
    _generators: dict[str, TwistGenerator]
    _aliases: dict[str, str]

    def __new__(
        cls,
        surface: PartitionedSurface,
        generators: Iterable[TwistGenerator],
        /,
        aliases: Mapping[str, str] | None = None
    ) -> Catalog:
        self = super().__new__(cls)
        self._surface = surface
        self._generators = {g.name: g for g in generators}
        self._aliases = dict(aliases or {})
        clash = set(self._generators) & set(self._aliases)
        if clash:
            raise ConfigError(f'Names used both as generator and alias: {sorted(clash)}')

        return self

    @property
    def surface(self) -> PartitionedSurface:
        return self._surface

    @property
    def generators(self) -> dict[str, TwistGenerator]:
        return dict(self._generators)

    @property
    def aliases(self) -> dict[str, str]:
        return dict(self._aliases)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._generators) + tuple(self._aliases)

    def __contains__(self, name: object) -> bool:
        return name in self._generators or name in self._aliases

    def parse(self, text: str, /) -> MappingClass:
        """Parses a word such as ``"Tsep1 Tbp2^-1 Tsep1"``.

        Raises
        ------
        InvalidWord
            If a token is malformed or names nothing in the catalog.
        """
        return self._parse(text, depth=0)

    def _parse(self, text: str, depth: int) -> MappingClass:
        if depth > len(self._aliases):
            raise InvalidWord(f'Alias definitions are circular near `{text}`')

        word: list[tuple[TwistGenerator, int]] = []
        for token in text.split():
            match = TOKEN.match(token)
            if not match:
                raise InvalidWord(f'Malformed token `{token}`')
            name, exp = match['name'], int(match['exp'] or 1)
            if name in self._generators:
                unit = MappingClass([(self._generators[name], 1)])
            elif name in self._aliases:
                unit = self._parse(self._aliases[name], depth + 1)
            else:
                raise InvalidWord(f'Unknown generator `{name}`')
            if exp < 0:
                unit = unit.inverse()
            for _ in range(abs(exp)):
                word += unit.word

        return MappingClass(word)

    def to_json(self) -> dict[str, Any]:
        return {
            'surface_hash': self._surface.hash,
            'surface': self._surface.description,
            'generators': [g.to_json() for g in self._generators.values()],
            'aliases': dict(self._aliases),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any], surface: PartitionedSurface, /) -> Catalog:
        """Rebuilds and validates a catalog for ``surface`` from its JSON form.

        Raises
        ------
        ConfigError
            If the catalog was made for another surface, is malformed, or a
            generator fails validation.
        """
        if data.get('surface_hash') != surface.hash:
            raise ConfigError(
                f'Catalog is for surface hash `{data.get("surface_hash")}`, '
                f'not `{surface.hash}` ({surface.name})'
            )
        w = surface.word
        try:
            generators = []
            for entry in data['generators']:
                generators.append(TwistGenerator(
                    entry['name'],
                    w(entry['core']),
                    {e: w(t) for e, t in entry['forward'].items()},
                    {e: w(t) for e, t in entry['backward'].items()},
                    kind=entry.get('kind', 'twist')
                ))
        except (KeyError, TypeError) as e:
            raise ConfigError(f'Malformed catalog entry: {e}')
        except InvalidWord as e:
            raise ConfigError(f'Catalog word does not parse on `{surface.name}`: {e}')

        for g in generators:
            validate_generator(g, surface)

        return cls(surface, generators, data.get('aliases', {}))


def load_catalog(source: str | Path, surface: PartitionedSurface, /) -> Catalog:
    """Loads a catalog from a JSON file or a shipped fixture by bare name."""
    path = Path(source)
    if not path.is_file():
        path = fixture_path(str(source))
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f'Cannot read catalog file `{path}`: {e}')

    return Catalog.from_json(data, surface)


def _run_generator(surface: PartitionedSurface, first: int, last: int) -> TwistGenerator:
    core = run_core(surface, first, last)
    c, c_bar = core.text, ' '.join(inverse_letter(x) for x in reversed(core.letters))
    forward, backward = {}, {}
    for kind, k in hub_items(surface)[first - 1:last]:
        if kind == 'handle':
            for edge in (f'x{k}', f'y{k}'):
                forward[edge] = surface.word(f'{c_bar} {edge} {c}')
                backward[edge] = surface.word(f'{c} {edge} {c_bar}')
        else:
            forward[f't{k}'] = surface.word(f'{c_bar} t{k}')
            backward[f't{k}'] = surface.word(f'{c} t{k}')

    return TwistGenerator(f'Trun{first}_{last}', core, forward, backward, kind='run')


def _substitute(
    table: Mapping[str, Sequence[Letter]], letters: Iterable[Letter], /
) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for letter in letters:
        image = table.get(letter_edge(letter))
        if image is None:
            out.append(letter)
        elif is_inverse(letter):
            out += [inverse_letter(x) for x in reversed(image)]
        else:
            out += image

    return reduce_letters(out)


def _band_generator(surface: PartitionedSurface, i: int) -> TwistGenerator:
    # The twist about x_i banded around handle i + 1, i.e. h Tx_i h^-1 for
    # the automorphism h that fixes the hub word of the two handles and
    # sends x_i to x_i K, K the curve around handle i + 1.
    x, y, u, v = f'x{i}', f'y{i}', f'x{i + 1}', f'y{i + 1}'
    k = run_core(surface, i + 1, i + 1).letters
    k_bar = tuple(inverse_letter(a) for a in reversed(k))

    h = {
        x: (x, *k),
        y: (*k_bar, y, *k),
        u: (*k_bar, f'~{y}', u, y, *k),
        v: (*k_bar, f'~{y}', v, y, *k),
    }
    h_inv = {
        x: (x, y, *k_bar, f'~{y}'),
        y: (y, *k, y, *k_bar, f'~{y}'),
        u: (y, *k, u, *k_bar, f'~{y}'),
        v: (y, *k, v, *k_bar, f'~{y}'),
    }
    twist, untwist = {y: (f'~{x}', y)}, {y: (x, y)}

    forward, backward = {}, {}
    for edge in (x, y, u, v):
        pulled = _substitute(h_inv, (edge,))
        image = _substitute(h, _substitute(twist, pulled))
        inverse = _substitute(h, _substitute(untwist, pulled))
        if image != (edge,) or inverse != (edge,):
            forward[edge] = surface.word(' '.join(image))
            backward[edge] = surface.word(' '.join(inverse))

    return TwistGenerator(
        f'Tband{i}', surface.word(' '.join(h[x])), forward, backward, kind='band'
    )


def standard_catalog(surface: PartitionedSurface, /) -> Catalog:
    """The standard generators of the canonical surface underlying ``surface``.

    * ``Tx{i}``, ``Ty{i}``: twists about the handle curves, ``y_i -> ~x_i y_i``
      and ``x_i -> x_i y_i``.
    * ``Tb{j}``: the twist about a curve parallel to the ``j``-th boundary,
      ``t_j -> t_j b_j``.
    * ``Trun{a}_{b}``: the twist about the curve enclosing the consecutive hub
      items ``a`` to ``b`` (handles first, then tails), which conjugates the
      enclosed handle edges by the core and prefixes the enclosed tails with
      its inverse. Single tails (boundary twists again) and the run of all
      items (a curve parallel to the whole disk face) are left out.
    * ``Tband{i}``, for ``i < g``: the twist about ``x_i`` banded around handle
      ``i + 1``, the curve ``x_i x_{i+1} ~y_{i+1} ~x_{i+1} y_{i+1}``. It is
      homologous to ``x_i``, and with ``Tx{i}`` it bounds a genus-1
      subsurface, which gives a genus-1 bounding pair.

    Aliases ``Tsep{k}`` name the runs that are separating in
    :math:`H_1^{\\mathcal{P}}`, and ``Tbp{k}`` the words ``A B^-1`` over pairs
    of non-separating generators whose cores have equal classes up to sign.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> cat = standard_catalog(make_surface(1, [["d1", "d2"]]))
    >>> list(cat.generators)
    ['Tx1', 'Ty1', 'Tb1', 'Tb2', 'Trun1_1', 'Trun1_2', 'Trun2_3']
    >>> cat.aliases
    {'Tsep1': 'Trun1_1', 'Tsep2': 'Trun2_3', 'Tbp1': 'Tb1 Tb2^-1', 'Tbp2': 'Tb1 Trun1_2^-1', 'Tbp3': 'Tb2 Trun1_2^-1'}
    """
    root = surface.root
    generators = []
    for i in range(1, root.genus + 1):
        generators.append(TwistGenerator(
            f'Tx{i}', root.word(f'x{i}'),
            {f'y{i}': root.word(f'~x{i} y{i}')}, {f'y{i}': root.word(f'x{i} y{i}')},
            kind='handle'
        ))
        generators.append(TwistGenerator(
            f'Ty{i}', root.word(f'y{i}'),
            {f'x{i}': root.word(f'x{i} y{i}')}, {f'x{i}': root.word(f'x{i} ~y{i}')},
            kind='handle'
        ))
    for j in range(1, len(root.boundaries) + 1):
        generators.append(TwistGenerator(
            f'Tb{j}', root.word(f'b{j}'),
            {f't{j}': root.word(f't{j} b{j}')}, {f't{j}': root.word(f't{j} ~b{j}')},
            kind='boundary'
        ))

    items = hub_items(root)
    for a in range(1, len(items) + 1):
        for b in range(a, len(items) + 1):
            if (a, b) == (1, len(items)) or (a == b and items[a - 1][0] == 'tail'):
                continue
            generators.append(_run_generator(root, a, b))
    for i in range(1, root.genus):
        generators.append(_band_generator(root, i))

    classes = {g.name: class_of(g.core, root) for g in generators}
    separating = [g.name for g in generators if g.kind == 'run' and classes[g.name].is_zero]
    aliases = {f'Tsep{k}': name for k, name in enumerate(separating, start=1)}

    nonseparating = [g.name for g in generators if not classes[g.name].is_zero]
    pairs = [
        (a, b) for i, a in enumerate(nonseparating) for b in nonseparating[i + 1:]
        if classes[a] in (classes[b], -classes[b])
    ]
    aliases |= {f'Tbp{k}': f'{a} {b}^-1' for k, (a, b) in enumerate(pairs, start=1)}

    return Catalog(root, generators, aliases)


def torelli_violation(f: MappingClass, surface: PartitionedSurface, /) -> str | None:
    """The label of the first basis class moved by ``f``, or :py:data:`None`."""
    for label, word in surface.basis_words:
        if class_of(apply(f, word), surface) != class_of(word, surface):
            return label

    return None


def acts_trivially_on_H1P(f: MappingClass, surface: PartitionedSurface, /) -> bool:
    """Whether ``f`` fixes every basis class of :math:`H_1^{\\mathcal{P}}`.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> S = make_surface(1, [["d1", "d2"]])
    >>> cat = standard_catalog(S)
    >>> acts_trivially_on_H1P(cat.parse("Tbp1"), S)
    True
    >>> acts_trivially_on_H1P(cat.parse("Tx1"), S)
    False
    """
    return torelli_violation(f, surface) is None


def is_P_separating(c: PathWord, surface: PartitionedSurface, /) -> bool:
    """Whether a closed curve is null in :math:`H_1^{\\mathcal{P}}`.

    Raises
    ------
    NotAClosedCurve
        If ``c`` is an arc.
    """
    if not c.is_closed:
        raise NotAClosedCurve(f'`{c.text}` is not a closed curve')

    return class_of(c, surface).is_zero


def _same_curve(c: PathWord, d: PathWord) -> bool:
    a, b = cyclic_reduce(c.letters), cyclic_reduce(d.letters)
    return len(a) == len(b) and any(a[i:] + a[:i] == b for i in range(max(len(a), 1)))


def is_P_bounding_pair(c: PathWord, d: PathWord, surface: PartitionedSurface, /) -> bool:
    """Whether two closed curves have the same nonzero class in :math:`H_1^{\\mathcal{P}}`.

    Word-equal curves (up to cyclic rotation) never form a pair.

    Raises
    ------
    NotAClosedCurve
        If either curve is an arc.
    """
    if not c.is_closed or not d.is_closed:
        raise NotAClosedCurve('Bounding pairs are made of closed curves')
    if _same_curve(c, d):
        return False
    a = class_of(c, surface)

    return not a.is_zero and a == class_of(d, surface)


def validate_generator(generator: TwistGenerator, surface: PartitionedSurface, /) -> None:
    """Checks a generator table against the surface it acts on.

    * every image runs between the endpoints of its edge,
    * on every basis class ``v`` the action is the transvection
      ``v + i(v, c) c`` of its core ``c``,
    * boundary loops and disk faces are fixed,
    * the inverse table undoes the forward table edge by edge.

    Raises
    ------
    ConfigError
        Naming the first failed check.
    """
    name = generator.name
    ends = surface.spine.endpoints
    for edge, image in generator.table.items() | generator.inverse_table.items():
        if ends.get(edge) != (image.start, image.end):
            raise ConfigError(f'Image of `{edge}` under `{name}` does not keep its endpoints')

    core = class_of(generator.core, surface)
    for label, word in surface.basis_words:
        v = class_of(word, surface)
        if class_of(generator.act(word), surface) != v + pair(v, core) * core:
            raise ConfigError(f'`{name}` does not act on `[{label}]` as the twist about its core')

    for loop in surface.spine.boundary_loops.values():
        b = surface.word(loop)
        if generator.act(b) != b:
            raise ConfigError(f'`{name}` moves the boundary loop `{loop}`')
    for face in surface.spine.disk_faces:
        w = surface.spine.face_word(face)
        if not _same_curve(generator.act(w), w):
            raise ConfigError(f'`{name}` does not fix the disk face `{w.text}`')

    for edge, (s, t) in ends.items():
        e = PathWord((edge,), start=s, end=t, endpoints=ends)
        back = generator.act(generator.act(e), -1)
        if back.letters != (edge,) or back.corners:
            raise ConfigError(f'Inverse table of `{name}` does not undo it on `{edge}`')


def torelli_generators(catalog: Catalog, surface: PartitionedSurface | None = None, /) -> list[str]:
    """The aliases of a catalog acting trivially on :math:`H_1^{\\mathcal{P}}` of ``surface``."""
    surface = surface or catalog.surface

    return [
        name for name in catalog.aliases
        if acts_trivially_on_H1P(catalog.parse(name), surface)
    ]


def random_word(
    catalog: Catalog, names: Sequence[str], length: int, rng: random.Random, /
) -> MappingClass:
    """A random word of ``length`` letters drawn from ``names`` with random signs."""
    if not names:
        raise ConfigError('No generator names to draw from')

    text = ' '.join(
        f'{rng.choice(names)}^{rng.choice((1, -1))}' for _ in range(length)
    )

    return catalog.parse(text)


if __name__ == "__main__":      # pragma: no cover
    # Doctest the module from the project root using
    #
    #     python -m doctest -v src/subtorelli/mcg.py
    #
    import doctest
    doctest.testmod()
