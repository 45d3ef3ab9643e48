from __future__ import annotations


__all__ = [
    'ExactSolver',
    'NamedCallableProxy',
    'integer_inverse',
]


# -- IMPORTS --

# -- Standard libraries --
from fractions import Fraction
from typing import Any, Callable, Sequence

# -- 3rd party libraries --
import sympy

# -- Internal libraries --


class NamedCallableProxy:
    """Class wrapper to have named callable proxies, which can also work as :py:class:`enum.Enum` values.

    Adapted from Stack Overflow solution by Ceppo93:

        https://stackoverflow.com/a/40486992
    """
    __slots__ = ('_callable', '_name')

    _callable: Callable
    _name: str | None

    def __new__(cls, callable_: Callable, /, *, name: str | None = None) -> NamedCallableProxy:
        """Constructor

        Parameters
        ----------
        callable_ : `callable`
            The callable to name and proxy.

        name : `str`, default=None
            The user-defined name of the callable to use in :py:func:`~subtorelli.utils.__repr__`.
            If :py:data:`None` the Python-defined default will be used.

        Returns
        -------
        callable
            A named callable proxy.

        Examples
        --------
        >>> shift = NamedCallableProxy(lambda spins: {e: s + 2 for e, s in spins.items()}, name="shift all spins by 2")
        >>> shift
        NamedCallableProxy("shift all spins by 2")
        >>> shift({"x1": 1, "b1": -1})
        {'x1': 3, 'b1': 1}
        """
        self = super().__new__(cls)
        self._callable = callable_
        self._name = name

        return self

    @property
    def name(self) -> str | None:
        return self._name

    def __repr__(self) -> str:
        if self._name:
            return f'{self.__class__.__name__}("{self._name}")'

        return str(self._callable)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NamedCallableProxy):
            return NotImplemented
        return self._callable.__code__.co_code == other._callable.__code__.co_code

    def __hash__(self) -> int:
        return hash(self._callable.__code__.co_code)

    def __call__(self, *args: Any, **kwargs: Any) -> Any:
        return self._callable(*args, **kwargs)


def _fraction(value: sympy.Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


class ExactSolver:
    """Exact solutions of ``A c = v`` for a fixed integer matrix ``A`` given by its columns.

    The independent columns of ``A`` (the pivots of its reduced row echelon
    form, so earlier columns are preferred) are fixed once, together with a
    rational left inverse of the submatrix they form. Each solve is then a
    matrix-vector product over :py:class:`fractions.Fraction` plus a
    membership check. Coefficients of non-pivot columns are always zero.

    Examples
    --------
    >>> solver = ExactSolver([[1, 0, 1], [0, 1, 1], [1, 1, 2]])
    >>> solver.pivots
    (0, 1)
    >>> solver.solve([2, 3, 5])
    [Fraction(2, 1), Fraction(3, 1), Fraction(0, 1)]
    >>> solver.solve([1, 0, 0]) is None
    True
    """
    __slots__ = ('_columns', '_pivots', '_left_inverse', '_rows')

    _columns: tuple[tuple[int, ...], ...]
    _pivots: tuple[int, ...]
    _left_inverse: tuple[tuple[Fraction, ...], ...]
    _rows: int

    def __new__(cls, columns: Sequence[Sequence[int]], /, *, rows: int | None = None) -> ExactSolver:
        """Class constructor.

        Parameters
        ----------
        columns : `typing.Sequence`
            The columns of ``A``, all of the same length.

        rows : `int`, default=None
            The number of rows, needed only when there are no columns.

        Returns
        -------
        ExactSolver
            The solver.
        """
        self = super().__new__(cls)
        self._columns = tuple(tuple(int(x) for x in col) for col in columns)
        if not self._columns:
            self._rows = rows or 0
            self._pivots = ()
            self._left_inverse = ()
            return self

        self._rows = len(self._columns[0])
        A = sympy.Matrix(self._columns).T
        _, pivots = A.rref()
        self._pivots = tuple(pivots)
        if not self._pivots:
            self._left_inverse = ()
            return self

        B = A[:, list(self._pivots)]
        L = (B.T * B).inv() * B.T
        self._left_inverse = tuple(
            tuple(_fraction(L[i, j]) for j in range(L.cols)) for i in range(L.rows)
        )

        return self

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def solve(self, v: Sequence[int], /) -> list[Fraction] | None:
        """A solution of ``A c = v``, or :py:data:`None` if ``v`` is not in the column span."""
        if len(v) != self._rows:
            raise ValueError(f'Expected a vector of length {self._rows}, got {len(v)}')

        coeffs = [sum((r * x for r, x in zip(row, v) if x), Fraction(0)) for row in self._left_inverse]
        image = [Fraction(0)] * self._rows
        for c, p in zip(coeffs, self._pivots):
            if c:
                for i, a in enumerate(self._columns[p]):
                    if a:
                        image[i] += c * a
        if any(image[i] != v[i] for i in range(self._rows)):
            return None

        full = [Fraction(0)] * len(self._columns)
        for c, p in zip(coeffs, self._pivots):
            full[p] = c

        return full


def integer_inverse(rows: Sequence[Sequence[int]], /) -> list[list[int]]:
    """The inverse of a square integer matrix with determinant ``±1``.

    Raises
    ------
    ValueError
        If the matrix is not unimodular.

    Examples
    --------
    >>> integer_inverse([[0, 1], [-1, 0]])
    [[0, -1], [1, 0]]
    >>> integer_inverse([[2, 0], [0, 1]])
    Traceback (most recent call last):
    ...
    ValueError: Matrix has determinant 2, not ±1
    """
    if not rows:
        return []

    M = sympy.Matrix(rows)
    det = M.det()
    if det not in (1, -1):
        raise ValueError(f'Matrix has determinant {det}, not ±1')

    inverse = M.inv()

    return [[int(inverse[i, j]) for j in range(inverse.cols)] for i in range(inverse.rows)]


if __name__ == "__main__":      # pragma: no cover
    # Doctest the module from the project root using
    #
    #     python -m doctest -v src/subtorelli/utils.py
    #
    import doctest
    doctest.testmod()
