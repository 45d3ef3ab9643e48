from __future__ import annotations


__all__ = [
    'BatteryReport',
    'EvalReport',
    'Verdict',
    'check_chillingworth_naturality',
    'check_corollary',
    'check_homomorphism',
    'check_injectivity',
    'check_isometry',
    'check_naturality',
    'check_representative_independence',
    'check_squares',
    'chillingworth_t',
    'e_tilde',
    'evaluate',
    'johnson_tau',
    'run_battery',
    'swap_arc_images',
]


# -- IMPORTS --

# -- Standard libraries --
import functools
import itertools
import logging
import random
import sys

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

# -- 3rd party libraries --

# -- Internal libraries --
sys.path.insert(0, str(Path(__file__).parent.parent))

from subtorelli.exceptions import (
    ConfigError,
    FramingInconsistency,
    NotTorelli,
    SubtorelliError,
    TauIdentificationFailure,
)
from subtorelli.homology import (
    Cochain,
    HClass,
    Wedge3,
    basis_of,
    class_of,
    contract_C,
    dual_D,
    dual_D_inv,
    include_s,
    intersection,
    pair,
    project_r,
    psi_K,
    psi_K_inv,
    psi_star_inv,
    pullback,
    r_star,
)
from subtorelli.mcg import (
    Catalog,
    MappingClass,
    acts_trivially_on_H1P,
    apply,
    random_word,
    standard_catalog,
    torelli_generators,
    torelli_violation,
)
from subtorelli.surface import (
    Embedding,
    PartitionedSurface,
    HUB,
    attach_handles,
    compose,
    load_surface,
    run_core,
    hub_items,
    totally_separated_completion,
)
from subtorelli.utils import (
    ExactSolver,
    integer_inverse,
)
from subtorelli.winding import (
    Framing,
    diff_cocycle,
    frame_gen,
    restrict,
    validate_framing,
    winding_difference,
)
from subtorelli.words import (
    Letter,
    PathWord,
    cyclic_reduce,
    inverse_letter,
    is_inverse,
    letter_edge,
    reduce_letters,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    """The outcome of one machine check over a family of cases."""
    #: Name of the check
    check: str
    #: Surface or embedding the check ran on
    subject: str
    #: Whether every case passed
    passed: bool
    #: Number of cases examined
    cases: int
    #: Failing cases, each a small JSON-ready mapping
    failures: tuple[dict[str, Any], ...] = ()
    #: Extra context, e.g. the framing or arc system used
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            'check': self.check,
            'subject': self.subject,
            'passed': self.passed,
            'cases': self.cases,
            'failures': list(self.failures),
            'detail': dict(self.detail),
        }


@dataclass(frozen=True)
class EvalReport:
    """Everything computed for one mapping class on one surface."""
    surface: str
    surface_hash: str
    word: str
    framing: str
    e_tilde: dict[str, int]
    t: dict[str, int]
    tau: list[dict[str, Any]] | None = None
    c_tau: dict[str, int] | None = None
    #: Winding change in half-turns per basis label, before halving
    winding_changes: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            'surface': self.surface,
            'surface_hash': self.surface_hash,
            'word': self.word,
            'framing': self.framing,
            'e_tilde': self.e_tilde,
            't': self.t,
            'tau': self.tau,
            'C_tau': self.c_tau,
            'winding_changes': self.winding_changes,
        }


@dataclass(frozen=True)
class BatteryReport:
    seed: int
    verdicts: tuple[Verdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_json(self) -> dict[str, Any]:
        return {
            'seed': self.seed,
            'passed': self.passed,
            'verdicts': [v.to_json() for v in self.verdicts],
        }


def _require_torelli(f: MappingClass, surface: PartitionedSurface) -> None:
    label = torelli_violation(f, surface)
    if label is not None:
        raise NotTorelli(
            f'`{f.text}` is not in the Torelli group of `{surface.name}`: it moves `[{label}]`',
            label=label
        )


def e_tilde(framing: Framing, f: MappingClass, surface: PartitionedSurface, /) -> Cochain:
    """The generalized Chillingworth class of a Torelli element, as a cochain.

    On a closed basis curve ``c`` the value is ``(w(f(c)) - w(c)) / 2``, and
    on a basis arc ``h`` it is ``w(f(h) * h^-1) / 2``, windings measured in
    half-turns against ``framing``.

    Raises
    ------
    NotTorelli
        If ``f`` moves some basis class; the exception names it.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> from subtorelli.mcg import standard_catalog
    >>> S = make_surface(1, [["d1", "d2"]], name="sigma_1_2")
    >>> f = standard_catalog(S).parse("Tb1 Tb2^-1")
    >>> e_tilde(frame_gen(S), f, S).as_dict()
    {'x1': 0, 'y1': 0, 'h1_1': -2, 'S1_1': 0}
    >>> e_tilde(frame_gen(S), standard_catalog(S).parse("Tx1"), S)
    Traceback (most recent call last):
    ...
    subtorelli.exceptions.NotTorelli: `Tx1` is not in the Torelli group of `sigma_1_2`: it moves `[y1]`
    """
    _require_torelli(f, surface)

    return diff_cocycle(framing, f, surface)


def chillingworth_t(framing: Framing, f: MappingClass, surface: PartitionedSurface, /) -> HClass:
    """The Poincaré-Lefschetz dual of :py:func:`e_tilde`, a class in :math:`H_1^{\\mathcal{P}}`.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> from subtorelli.mcg import standard_catalog
    >>> S = make_surface(1, [["d1", "d2"]])
    >>> chillingworth_t(frame_gen(S), standard_catalog(S).parse("Tbp1"), S)
    HClass(-2*[S1_1])
    """
    return dual_D_inv(e_tilde(framing, f, surface))


class _Presentation:
    """A free presentation of the fundamental group of a one-boundary surface, based on its boundary."""
    __slots__ = ('base', 'tree', 'paths', 'substitutions', 'generators', 'loops', 'classes', 'inverse')

    def __init__(self, surface: PartitionedSurface) -> None:
        spine = surface.spine
        ends = spine.endpoints
        self.base = ends[surface.boundary_loop(surface.boundaries[0])][0]

        self.paths: dict[str, tuple[Letter, ...]] = {self.base: ()}
        self.tree: set[str] = set()
        queue = [self.base]
        for v in queue:
            for edge, (s, t) in ends.items():
                if s == v and t not in self.paths:
                    self.paths[t] = self.paths[v] + (edge,)
                elif t == v and s not in self.paths:
                    self.paths[s] = self.paths[v] + (inverse_letter(edge),)
                else:
                    continue
                self.tree.add(edge)
                queue.append(t if s == v else s)

        self.substitutions: dict[str, tuple[Letter, ...]] = {}
        order = {e: i for i, e in enumerate(spine.edges)}
        for face in spine.disk_faces:
            word = spine.face_word(face)
            path = self.paths[word.start]
            relator = cyclic_reduce(self.rewrite(path + face + _inverse(path)))
            counts: dict[str, int] = {}
            for x in relator:
                counts[letter_edge(x)] = counts.get(letter_edge(x), 0) + 1
            singles = [e for e, k in counts.items() if k == 1]
            if not singles:
                raise TauIdentificationFailure(
                    f'Disk face `{word.text}` gives no generator to eliminate'
                )
            g = max(singles, key=order.__getitem__)
            i = next(k for k, x in enumerate(relator) if letter_edge(x) == g)
            before, after = relator[:i], relator[i + 1:]
            expression = (
                reduce_letters(after + before) if is_inverse(relator[i])
                else reduce_letters(_inverse(before) + _inverse(after))
            )
            self.substitutions = {
                e: reduce_letters(_substitute(expr, g, expression))
                for e, expr in self.substitutions.items()
            }
            self.substitutions[g] = expression

        self.generators = tuple(
            e for e in spine.edges if e not in self.tree and e not in self.substitutions
        )
        self.loops = {
            g: PathWord(
                self.paths[ends[g][0]] + (g,) + _inverse(self.paths[ends[g][1]]),
                start=self.base, end=self.base, endpoints=ends
            )
            for g in self.generators
        }
        if len(self.generators) != basis_of(surface).size:
            raise TauIdentificationFailure(
                f'Presentation of `{surface.name}` has {len(self.generators)} generators, '
                f'expected {basis_of(surface).size}'
            )
        self.classes = tuple(class_of(self.loops[g], surface).coords for g in self.generators)
        try:
            self.inverse = integer_inverse(self.classes)
        except ValueError as e:
            raise TauIdentificationFailure(f'Generator classes do not form a basis: {e}')

    def rewrite(self, letters: Iterable[Letter]) -> tuple[Letter, ...]:
        out: list[Letter] = []
        for x in letters:
            e = letter_edge(x)
            if e in self.tree:
                continue
            expression = self.substitutions.get(e)
            if expression is None:
                out.append(x)
            else:
                out += _inverse(expression) if is_inverse(x) else expression

        return reduce_letters(out)


def _inverse(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple(inverse_letter(x) for x in reversed(letters))


def _substitute(letters: Sequence[Letter], g: str, expression: Sequence[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for x in letters:
        if letter_edge(x) != g:
            out.append(x)
        else:
            out += _inverse(expression) if is_inverse(x) else expression
    return out


@functools.cache
def _presentation(surface: PartitionedSurface) -> _Presentation:
    return _Presentation(surface)


def _magnus(letters: Sequence[Letter], index: dict[str, int], n: int) -> tuple[list[int], list[list[int]]]:
    # Degree 1 and 2 coefficients of the Magnus expansion g -> 1 + X_g
    c1 = [0] * n
    c2 = [[0] * n for _ in range(n)]
    for x in letters:
        k = index[letter_edge(x)]
        s = -1 if is_inverse(x) else 1
        for a in range(n):
            if c1[a]:
                c2[a][k] += c1[a] * s
        if s < 0:
            c2[k][k] += 1
        c1[k] += s

    return c1, c2


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def _add_wedge2(target: dict[tuple[int, int], int], u: Sequence[int], v: Sequence[int], k: int) -> None:
    for q, a in enumerate(u):
        if not a:
            continue
        for r, b in enumerate(v):
            if b and q != r:
                key, sign = ((q, r), 1) if q < r else ((r, q), -1)
                target[key] = target.get(key, 0) + sign * k * a * b


@functools.cache
def _iota(surface: PartitionedSurface) -> tuple[ExactSolver, list[tuple[int, int, int]]]:
    basis = basis_of(surface)
    n = basis.size
    omega = basis.pairing
    triples = list(itertools.combinations(range(n), 3))
    rows = {(v, pq): i for i, (v, pq) in enumerate(itertools.product(range(n), _pairs(n)))}

    columns = []
    for p, q, r in triples:
        column = [0] * len(rows)
        for v in range(n):
            image: dict[tuple[int, int], int] = {}
            for a, (b, c) in ((p, (q, r)), (q, (r, p)), (r, (p, q))):
                if omega[v][a]:
                    key, sign = ((b, c), 1) if b < c else ((c, b), -1)
                    image[key] = image.get(key, 0) + sign * omega[v][a]
            for key, k in image.items():
                column[rows[(v, key)]] += k
        columns.append(column)

    return ExactSolver(columns, rows=len(rows)), triples


def johnson_tau(f: MappingClass, surface: PartitionedSurface, /) -> Wedge3:
    """The Johnson homomorphism of a Torelli element of a one-boundary surface.

    The fundamental group is presented on the boundary basepoint by
    collapsing a spanning tree of the spine and eliminating one generator per
    disk face. For each free generator ``g`` the degree 2 Magnus
    coefficients of ``f(g) g^-1`` give an element of :math:`\\wedge^2 H`;
    the resulting homomorphism ``H -> \\wedge^2 H`` is identified with the
    unique trivector whose contraction
    ``v -> i(v, a) b^c + i(v, b) c^a + i(v, c) a^b`` it is.

    Raises
    ------
    ConfigError
        If the surface does not have exactly one boundary component or has
        genus 0.

    NotTorelli
        If ``f`` is not in the Torelli group.

    TauIdentificationFailure
        If the coefficients are not the contraction of an integral trivector.

    Examples
    --------
    >>> from subtorelli.surface import make_surface
    >>> from subtorelli.mcg import standard_catalog
    >>> S = make_surface(2, [["d1"]])
    >>> johnson_tau(standard_catalog(S).parse("Tsep1"), S)
    Wedge3(0)
    """
    if len(surface.boundaries) != 1:
        raise ConfigError(
            f'The Johnson homomorphism needs one boundary component; `{surface.name}` has '
            f'{len(surface.boundaries)}'
        )
    if surface.genus < 1:
        raise ConfigError(f'`{surface.name}` has genus 0 and a trivial Torelli group')
    _require_torelli(f, surface)

    presentation = _presentation(surface)
    basis = basis_of(surface)
    n = basis.size
    index = {g: i for i, g in enumerate(presentation.generators)}
    classes = presentation.classes

    on_generators = []
    for g in presentation.generators:
        image = presentation.rewrite(apply(f, presentation.loops[g]).letters)
        c1, c2 = _magnus(reduce_letters(image + (inverse_letter(g),)), index, n)
        if any(c1):
            raise TauIdentificationFailure(f'`{f.text}` moves the generator `{g}` in homology')
        if any(c2[a][b] != -c2[b][a] for a, b in _pairs(n)):
            raise TauIdentificationFailure(f'Degree 2 coefficients of `{f.text}` on `{g}` are not alternating')
        tau_g: dict[tuple[int, int], int] = {}
        for a, b in _pairs(n):
            if c2[a][b]:
                _add_wedge2(tau_g, classes[a], classes[b], c2[a][b])
        on_generators.append(tau_g)

    pairs = _pairs(n)
    rhs = []
    for p in range(n):
        value: dict[tuple[int, int], int] = {}
        for k, tau_g in enumerate(on_generators):
            if presentation.inverse[p][k]:
                for key, c in tau_g.items():
                    value[key] = value.get(key, 0) + presentation.inverse[p][k] * c
        rhs += [value.get(pq, 0) for pq in pairs]

    solver, triples = _iota(surface)
    solution = solver.solve(rhs)
    if solution is None or any(c.denominator != 1 for c in solution):
        raise TauIdentificationFailure(
            f'Magnus coefficients of `{f.text}` are not the contraction of an integral trivector'
        )

    return Wedge3(basis, {t: int(c) for t, c in zip(triples, solution) if c})


def evaluate(framing: Framing, f: MappingClass, surface: PartitionedSurface, /) -> EvalReport:
    """Computes ``e_tilde``, ``t`` and, on one-boundary surfaces, ``tau`` and ``C(tau)``.

    Raises
    ------
    ConfigError
        If the surface has genus 0.
    """
    if surface.genus < 1:
        raise ConfigError(f'`{surface.name}` has genus 0 and a trivial Torelli group')

    e = e_tilde(framing, f, surface)
    t = dual_D_inv(e)
    tau = c_tau = None
    if len(surface.boundaries) == 1:
        w = johnson_tau(f, surface)
        tau, c_tau = w.as_list(), contract_C(w).as_dict()

    return EvalReport(
        surface=surface.name,
        surface_hash=surface.hash,
        word=f.text,
        framing=framing.name,
        e_tilde=e.as_dict(),
        t=t.as_dict(),
        tau=tau,
        c_tau=c_tau,
        winding_changes={label: winding_difference(framing, f, word) for label, word in surface.basis_words},
    )


def _subject(embedding: Embedding) -> str:
    return f'{embedding.source.name} -> {embedding.target.name}'


def check_naturality(
    embedding: Embedding, framing: Framing, fs: Iterable[MappingClass], /, *, arcs: str = 'K'
) -> Verdict:
    """Checks ``e_tilde_X(i_* f) = i'^*(e_tilde_Y(f))`` for a family of Torelli elements.

    ``framing`` lives on the target and ``Y`` is its restriction to the
    source. Failures name the target basis label where the two sides differ.
    """
    source, target = embedding.source, embedding.target
    inner = restrict(framing, source.spine)
    labels = basis_of(target).labels
    failures = []
    fs = list(fs)
    for f in fs:
        lhs = e_tilde(framing, f, target)
        rhs = pullback(e_tilde(inner, f, source), embedding, arcs=arcs)
        failures += [
            {'word': f.text, 'label': label, 'expected': a, 'received': b}
            for label, a, b in zip(labels, lhs.values, rhs.values) if a != b
        ]

    return Verdict(
        'naturality', _subject(embedding), not failures, len(fs), tuple(failures),
        {'arcs': arcs, 'framing': framing.name}
    )


def check_chillingworth_naturality(
    embedding: Embedding, framing: Framing, fs: Iterable[MappingClass], /, *, arcs: str = 'K'
) -> Verdict:
    """Checks ``s_* psi_K t_Y(f) = t_X(i_* f)`` for a family of Torelli elements."""
    source, target = embedding.source, embedding.target
    inner = restrict(framing, source.spine)
    failures = []
    fs = list(fs)
    for f in fs:
        expected = chillingworth_t(framing, f, target)
        received = include_s(psi_K(chillingworth_t(inner, f, source), embedding, arcs=arcs), embedding)
        if expected != received:
            failures.append({'word': f.text, 'expected': expected.as_dict(), 'received': received.as_dict()})

    return Verdict(
        'chillingworth-naturality', _subject(embedding), not failures, len(fs), tuple(failures),
        {'arcs': arcs, 'framing': framing.name}
    )


def check_squares(embedding: Embedding, /, *, arcs: str = 'K') -> Verdict:
    """Checks ``(psi_K^*)^-1 D = D psi_K`` on the source basis and ``r^* D = D s_*`` on the completion basis."""
    failures = []
    source = basis_of(embedding.source)
    for label in source.labels:
        a = source.element(label)
        if psi_star_inv(dual_D(a), embedding, arcs=arcs) != dual_D(psi_K(a, embedding, arcs=arcs)):
            failures.append({'square': 'left', 'label': label})
    completion = basis_of(embedding.completion)
    for label in completion.labels:
        b = completion.element(label)
        if r_star(dual_D(b), embedding) != dual_D(include_s(b, embedding)):
            failures.append({'square': 'right', 'label': label})

    return Verdict(
        'squares', _subject(embedding), not failures, source.size + completion.size,
        tuple(failures), {'arcs': arcs}
    )


def check_isometry(embedding: Embedding, /, *, arcs: str = 'K') -> Verdict:
    """Checks that ``psi_K`` preserves the intersection pairing on basis pairs."""
    source = basis_of(embedding.source)
    failures = []
    for a, b in itertools.product(source.labels, repeat=2):
        u, v = source.element(a), source.element(b)
        if pair(u, v) != pair(psi_K(u, embedding, arcs=arcs), psi_K(v, embedding, arcs=arcs)):
            failures.append({'pair': [a, b]})

    return Verdict(
        'isometry', _subject(embedding), not failures, source.size ** 2, tuple(failures), {'arcs': arcs}
    )


def check_injectivity(embedding: Embedding, /, *, arcs: str = 'K') -> Verdict:
    """Checks that ``i'^* = r^* o (psi_K^*)^-1`` has full rank on the dual basis."""
    source = basis_of(embedding.source)
    columns = []
    for i in range(source.size):
        delta = Cochain(source, (int(i == j) for j in range(source.size)))
        columns.append(pullback(delta, embedding, arcs=arcs).values)
    rank = ExactSolver(columns, rows=basis_of(embedding.target).size).rank if columns else 0
    passed = rank == source.size

    return Verdict(
        'injectivity', _subject(embedding), passed, source.size,
        () if passed else ({'rank': rank, 'expected': source.size},), {'arcs': arcs}
    )


def check_corollary(f: MappingClass, capping: Embedding, framing: Framing, /) -> Verdict:
    """Checks the factorization of ``t`` through the Johnson homomorphism after capping.

    With ``framing`` on the one-boundary target, checks that
    ``C(tau(i_* f)) = t(i_* f)`` there and that
    ``psi_K^-1(r_*(C(tau(i_* f)))) = t_Y(f)`` on the source.
    """
    source, target = capping.source, capping.target
    c_tau = contract_C(johnson_tau(f, target))
    failures = []
    t_target = chillingworth_t(framing, f, target)
    if c_tau != t_target:
        failures.append({'word': f.text, 'side': 'target', 'expected': t_target.as_dict(), 'received': c_tau.as_dict()})
    t_source = chillingworth_t(restrict(framing, source.spine), f, source)
    received = psi_K_inv(project_r(c_tau, capping), capping)
    if received != t_source:
        failures.append({'word': f.text, 'side': 'source', 'expected': t_source.as_dict(), 'received': received.as_dict()})

    return Verdict(
        'corollary', _subject(capping), not failures, 1, tuple(failures), {'framing': framing.name}
    )


def check_homomorphism(
    framing: Framing, pairs: Iterable[tuple[MappingClass, MappingClass]], surface: PartitionedSurface, /
) -> Verdict:
    """Checks ``e_tilde(f g) = e_tilde(f) + e_tilde(g)`` and the same for ``t``."""
    failures = []
    pairs = list(pairs)
    for f, g in pairs:
        ef, eg, efg = (e_tilde(framing, h, surface) for h in (f, g, f * g))
        if efg != ef + eg or dual_D_inv(efg) != dual_D_inv(ef) + dual_D_inv(eg):
            failures.append({'f': f.text, 'g': g.text, 'expected': (ef + eg).as_dict(), 'received': efg.as_dict()})

    return Verdict(
        'homomorphism', surface.name, not failures, len(pairs), tuple(failures), {'framing': framing.name}
    )


def check_representative_independence(
    framing: Framing,
    fs: Iterable[MappingClass],
    pairs: Iterable[tuple[PathWord, PathWord]],
    surface: PartitionedSurface,
    /
) -> Verdict:
    """Checks that homologous representatives give the same winding change under each of ``fs``.

    Every pair is checked against every word, so the case count is
    ``len(fs) * len(pairs)``.

    Raises
    ------
    NotTorelli
        If some word of ``fs`` moves a basis class.

    SubtorelliError
        If a pair is not homologous.
    """
    fs, pairs = list(fs), list(pairs)
    for f in fs:
        _require_torelli(f, surface)
    for a, b in pairs:
        if class_of(a, surface) != class_of(b, surface):
            raise SubtorelliError(f'`{a.text}` and `{b.text}` are not homologous')

    failures = []
    for f, (a, b) in itertools.product(fs, pairs):
        u, v = winding_difference(framing, f, a), winding_difference(framing, f, b)
        if u != v:
            failures.append({'word': f.text, 'a': a.text, 'b': b.text, 'expected': u, 'received': v})

    return Verdict(
        'representative-independence', surface.name, not failures, len(fs) * len(pairs), tuple(failures),
        {'framing': framing.name, 'words': len(fs)}
    )


def swap_arc_images(embedding: Embedding, a: str, b: str, /, *, arcs: str = 'K') -> Embedding:
    """A copy of an embedding whose arc system exchanges the closures of two source arcs."""
    words = embedding.psi_words(arcs)
    words[a], words[b] = words[b], words[a]
    systems = {name: embedding.psi_words(name) for name in embedding.arc_systems} | {arcs: words}

    return Embedding(
        embedding.source, embedding.target, embedding.images,
        completion=embedding.completion,
        psi=systems,
        hat_labels=embedding.hat_labels,
        pieces=embedding.pieces
    )


def _homologous_pairs(
    surface: PartitionedSurface, rng: random.Random, count: int
) -> list[tuple[PathWord, PathWord]]:
    # Closed: c ~ a c ~a [a, b]. Arcs: ~t_A t_B ~ ~t_A L t_B for a null loop L at the hub.
    items = len(hub_items(surface))
    hub = [word for _, word in surface.basis_words if word.is_closed and word.start == HUB]
    hub += [run_core(surface, k, k) for k in range(1, items + 1)]
    null = [
        run_core(surface, a, b) for a in range(1, items + 1) for b in range(a, items + 1)
        if class_of(run_core(surface, a, b), surface).is_zero
    ]
    pairs = []
    for _ in range(count):
        label, word = rng.choice(surface.basis_words)
        a, b = rng.choice(hub), rng.choice(hub)
        commutator = f'{a.text} {b.text} {_text(_inverse(a.letters))} {_text(_inverse(b.letters))}'
        if word.is_closed:
            other = f'{a.text} {word.text} {_text(_inverse(a.letters))} {commutator}'
        else:
            loop = rng.choice(null).text if null and rng.random() < 0.5 else commutator
            first, *middle, last = word.letters
            other = f'{first} {_text(middle)} {loop} {last}'
        pairs.append((word, surface.word(other, start=word.start)))

    return pairs


def _text(letters: Sequence[Letter]) -> str:
    return ' '.join(letters)


def _torelli_words(
    catalog: Catalog, surface: PartitionedSurface, rng: random.Random, count: int, length: int = 4
) -> list[MappingClass]:
    names = torelli_generators(catalog, surface)

    return [random_word(catalog, names, rng.randint(1, length), rng) for _ in range(count)]


def _basis_verdict(surface: PartitionedSurface) -> Verdict:
    basis = basis_of(surface)
    failures = []
    closed = [i for i, w in enumerate(basis.words) if w.is_closed]
    for i, j in itertools.product(closed, repeat=2):
        ribbon = intersection(basis.words[i].chain(), basis.words[j].chain(), surface.spine)
        if ribbon != basis.pairing[i][j]:
            failures.append({'pair': [basis.labels[i], basis.labels[j]], 'expected': basis.pairing[i][j], 'received': ribbon})
    expected_rank = 2 * surface.genus + 2 * sum(len(b) - 1 for b in surface.partition)
    if basis.size != expected_rank:
        failures.append({'rank': basis.size, 'expected': expected_rank})

    return Verdict('basis', surface.name, not failures, len(closed) ** 2 + 1, tuple(failures))


def _expect_error(check: str, subject: str, error: type[Exception], thunk: Any, **detail: Any) -> Verdict:
    try:
        thunk()
    except error as e:
        return Verdict(check, subject, True, 1, (), detail | {'error': type(e).__name__, 'message': str(e)})

    return Verdict(check, subject, False, 1, ({'expected_error': error.__name__},), detail)


def _guarded(check: str, subject: str, thunk: Any) -> Verdict:
    # A word outside the Torelli group fails the check it was drawn for.
    try:
        return thunk()
    except NotTorelli as e:
        return Verdict(
            check, subject, False, 1, ({'error': type(e).__name__, 'label': e.label, 'message': str(e)},)
        )


def _separating_arc_words(
    embedding: Embedding, framing: Framing, fs: Iterable[MappingClass], a: str, b: str
) -> list[MappingClass]:
    # Torelli on both ends, with different source values on the arcs ``a`` and ``b``.
    source, target = embedding.source, embedding.target
    inner = restrict(framing, source.spine)
    labels = basis_of(source).labels
    found = []
    for f in fs:
        if not (acts_trivially_on_H1P(f, source) and acts_trivially_on_H1P(f, target)):
            continue
        values = dict(zip(labels, e_tilde(inner, f, source).values))
        if values[a] != values[b]:
            found.append(f)

    return found


def run_battery(
    seed: int = 0,
    /,
    *,
    variants: Sequence[str] = ('canonical', 'alternative'),
    words: int = 20,
    pairs: int = 200,
    extra_framings: Sequence[tuple[PartitionedSurface, Framing]] = (),
    catalog: Catalog | None = None
) -> BatteryReport:
    """Runs the full verification battery on the shipped surfaces.

    Parameters
    ----------
    seed : `int`, default=0
        Seed of every random choice, so runs are reproducible.

    variants : `typing.Sequence`, default=("canonical", "alternative")
        The generated framings to run the framing-dependent checks under.

    words : `int`, default=20
        Random Torelli words, of length at most 4, per naturality,
        corollary and representative independence case.

    pairs : `int`, default=200
        Random pairs per homomorphism and representative independence case.

    extra_framings : `typing.Sequence`, default=()
        ``(surface, framing)`` pairs supplied by the caller; each is
        validated and then used for a homomorphism check.

    catalog : `Catalog`, default=None
        A catalog to draw Torelli words from on its own surface instead of
        the standard one.

    Returns
    -------
    BatteryReport
        All verdicts.

    Raises
    ------
    FramingInconsistency
        If a caller-supplied framing is inconsistent.
    """
    verdicts: list[Verdict] = []

    def rng(case: str) -> random.Random:
        return random.Random(f'{seed}:{case}')

    def catalog_for(surface: PartitionedSurface) -> Catalog:
        if catalog is not None and catalog.surface == surface.root:
            return catalog
        return standard_catalog(surface)

    surfaces = {name: load_surface(name) for name in (
        'sigma_1_1', 'sigma_2_1', 'sigma_1_2', 'sigma_1_2_sep', 'sigma_2_2', 'sigma_2_2_sep', 'sigma_2_6_mixed'
    )}

    logger.info('basis and pairing checks')
    for surface in surfaces.values():
        verdicts.append(_basis_verdict(surface))

    for surface, framing in extra_framings:
        validate_framing(framing, surface)
        f_g = _torelli_words(catalog_for(surface), surface, rng(f'extra:{surface.name}'), 2 * pairs)
        verdicts.append(_guarded(
            'homomorphism', surface.name,
            lambda: check_homomorphism(framing, zip(f_g[::2], f_g[1::2]), surface)
        ))

    logger.info('homomorphism and representative independence')
    for name in ('sigma_1_2', 'sigma_2_2_sep', 'sigma_2_6_mixed'):
        surface = surfaces[name]
        for variant in variants:
            framing = frame_gen(surface, variant)
            validate_framing(framing, surface)
            r = rng(f'hom:{name}:{variant}')
            f_g = _torelli_words(catalog_for(surface), surface, r, 2 * pairs)
            verdicts.append(_guarded(
                'homomorphism', surface.name,
                lambda: check_homomorphism(framing, zip(f_g[::2], f_g[1::2]), surface)
            ))
            fs = _torelli_words(catalog_for(surface), surface, r, words)
            verdicts.append(_guarded(
                'representative-independence', surface.name,
                lambda: check_representative_independence(framing, fs, _homologous_pairs(surface, r, pairs), surface)
            ))

    logger.info('naturality under embeddings')
    embeddings = []
    for name in ('sigma_1_2', 'sigma_2_6_mixed'):
        _, e = totally_separated_completion(surfaces[name])
        embeddings.append(e)
    hat, cap = totally_separated_completion(surfaces['sigma_1_2'])
    _, attach = attach_handles(hat, hat.boundaries[0])
    embeddings.append(compose(cap, attach))
    for e in embeddings:
        fs = _torelli_words(catalog_for(e.source), e.source, rng(f'nat:{_subject(e)}'), words)
        verdicts += [check_squares(e), check_isometry(e), check_injectivity(e)]
        for variant in variants:
            framing = frame_gen(e.target, variant)
            validate_framing(framing, e.target)
            for arcs in e.arc_systems:
                verdicts.append(_guarded('naturality', _subject(e), lambda: check_naturality(e, framing, fs, arcs=arcs)))
            verdicts.append(_guarded(
                'chillingworth-naturality', _subject(e), lambda: check_chillingworth_naturality(e, framing, fs)
            ))

    logger.info('factorization through the Johnson homomorphism')
    for name in ('sigma_1_2', 'sigma_2_2'):
        _, e = totally_separated_completion(surfaces[name])
        fs = _torelli_words(catalog_for(e.source), e.source, rng(f'cor:{name}'), words)
        for variant in variants:
            framing = frame_gen(e.target, variant)
            for f in fs:
                verdicts.append(_guarded('corollary', _subject(e), lambda: check_corollary(f, e, framing)))

    logger.info('spot values, framing dependence and negative controls')
    S = surfaces['sigma_1_2']
    cat = catalog_for(S)
    bp = cat.parse('Tb1 Tb2^-1')
    t = chillingworth_t(frame_gen(S), bp, S)
    expected = 2 * class_of(S.word('t2 b2 ~t2'), S)
    verdicts.append(Verdict(
        'spot-bounding-pair', S.name, t == expected, 1,
        () if t == expected else ({'expected': expected.as_dict(), 'received': t.as_dict()},)
    ))
    T = surfaces['sigma_2_2']
    t_sep = chillingworth_t(frame_gen(T), catalog_for(T).parse('Tsep1'), T)
    verdicts.append(Verdict(
        'spot-separating', T.name, t_sep.is_zero, 1,
        () if t_sep.is_zero else ({'received': t_sep.as_dict()},)
    ))

    U = surfaces['sigma_1_1']
    tx = catalog_for(U).parse('Tx1')
    raw = [diff_cocycle(frame_gen(U, v), tx, U) for v in ('canonical', 'alternative')]
    verdicts.append(Verdict(
        'framing-dependence', U.name, raw[0] != raw[1], 1,
        () if raw[0] != raw[1] else ({'received': raw[0].as_dict()},)
    ))
    torelli = _torelli_words(cat, S, rng('framing-independence'), words)
    agree = [
        f.text for f in torelli
        if e_tilde(frame_gen(S, 'canonical'), f, S) != e_tilde(frame_gen(S, 'alternative'), f, S)
    ]
    verdicts.append(Verdict(
        'framing-independence-on-torelli', S.name, not agree, len(torelli),
        tuple({'word': w} for w in agree)
    ))

    M = surfaces['sigma_2_6_mixed']
    _, e = totally_separated_completion(M)
    corrupted = swap_arc_images(e, 'h1_1', 'h1_2')
    cat_M = catalog_for(M)
    candidates = [cat_M.parse(name) for name in torelli_generators(cat_M, M)]
    candidates += _torelli_words(cat_M, M, rng('corrupted'), words)
    framing = frame_gen(e.target)
    fs = _separating_arc_words(e, framing, candidates, 'h1_1', 'h1_2')
    if fs:
        broken = _guarded('naturality', _subject(e), lambda: check_naturality(corrupted, framing, fs))
        caught = not broken.passed and any('word' in x and x['label'] == 'h1_1' for x in broken.failures)
        cases = broken.cases
    else:
        caught, cases = False, 0
    verdicts.append(Verdict(
        'negative-corrupted-arc-system', _subject(e), caught, cases,
        () if caught else ({'expected': 'a failure at [h1_1]', 'words': len(fs)},)
    ))
    bad = frame_gen(S).with_turn('x1-', 'y1-', 0)
    verdicts.append(_expect_error(
        'negative-corrupted-framing', S.name, FramingInconsistency, lambda: validate_framing(bad, S)
    ))
    verdicts.append(_expect_error(
        'negative-not-torelli', S.name, NotTorelli, lambda: e_tilde(frame_gen(S), cat.parse('Tx1'), S)
    ))

    for v in verdicts:
        if not v.passed:
            logger.warning('check `%s` failed on `%s`', v.check, v.subject)

    return BatteryReport(seed, tuple(verdicts))


if __name__ == "__main__":      # pragma: no cover
    # Doctest the module from the project root using
    #
    #     python -m doctest -v src/subtorelli/chillingworth.py
    #
    import doctest
    doctest.testmod()
