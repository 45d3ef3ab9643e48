# -- IMPORTS --

# -- Standard libraries --
from fractions import Fraction

# -- 3rd party libraries --
import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

# -- Internal libraries --
from subtorelli.utils import (
	ExactSolver,
	NamedCallableProxy,
	integer_inverse,
)


class TestNamedCallableProxy:

	@pytest.mark.parametrize(
	    """callable_,
	       name,
	       expected_callable_proxy""",
	    [
	    	# Case #1
	        (
	        	lambda spins: {e: s + 2 for e, s in spins.items()},
	        	"shift all spins by 2",
	        	NamedCallableProxy(lambda spins: {e: s + 2 for e, s in spins.items()}, name="shift all spins by 2"),
	        ),
	        # Case #2
	        (
	        	lambda spins: {e: s + 2 for e, s in spins.items()},
	        	None,
	        	NamedCallableProxy(lambda spins: {e: s + 2 for e, s in spins.items()}),
	        ),
	    ],
	)
	def test_NamedCallableProxy__creation_and_initialisation(
		self,
		callable_,
		name,
		expected_callable_proxy
	):
		expected = expected_callable_proxy

		# The received ``NamedCallableProxy`` object
		received = NamedCallableProxy(callable_, name=name)

		# Compare the received and expected objects
		assert received == expected

		# Compare the names
		assert received.name == expected.name

		# The ``__repr__`` carries the name when there is one
		if name:
			assert received.__repr__() == f'NamedCallableProxy("{name}")'
		else:
			assert received.__repr__()

		# Compare the outputs for ``__call__``
		assert received({'x1': 1}) == expected({'x1': 1}) == {'x1': 3}
		assert received({'b1': -5, 'b2': -1}) == expected({'b1': -5, 'b2': -1}) == {'b1': -3, 'b2': 1}


class TestExactSolver:

	def test_ExactSolver__dependent_columns__earlier_pivots_and_zero_free_coefficients(self):
		solver = ExactSolver([[1, 0, 1], [0, 1, 1], [1, 1, 2]])

		assert solver.pivots == (0, 1)
		assert solver.rank == 2
		assert solver.solve([2, 3, 5]) == [Fraction(2), Fraction(3), Fraction(0)]
		assert solver.solve([1, 0, 0]) is None

	def test_ExactSolver__rational_solution__exact_fractions(self):
		solver = ExactSolver([[2, 0], [0, 2]])

		assert solver.solve([1, 3]) == [Fraction(1, 2), Fraction(3, 2)]

	def test_ExactSolver__no_columns__only_zero_in_span(self):
		solver = ExactSolver([], rows=3)

		assert solver.rank == 0
		assert solver.solve([0, 0, 0]) == []
		assert solver.solve([0, 1, 0]) is None

	def test_ExactSolver__wrong_vector_length__value_error(self):
		with pytest.raises(ValueError):
			ExactSolver([[1, 0]]).solve([1, 0, 0])

	@settings(derandomize=True, max_examples=50)
	@given(
	    st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4).filter(
	        lambda columns: any(any(col) for col in columns)
	    ),
	    st.data(),
	)
	def test_ExactSolver__combinations_of_columns__recovered(self, columns, data):
		solver = ExactSolver(columns)
		coeffs = data.draw(st.lists(st.integers(-5, 5), min_size=len(columns), max_size=len(columns)))
		v = [sum(c * col[i] for c, col in zip(coeffs, columns)) for i in range(4)]

		solution = solver.solve(v)

		assert solution is not None
		assert [sum(c * col[i] for c, col in zip(solution, columns)) for i in range(4)] == v


class TestIntegerInverse:

	@pytest.mark.parametrize(
	    "rows, expected",
	    [
	        ([], []),
	        ([[0, 1], [-1, 0]], [[0, -1], [1, 0]]),
	        ([[1, 1], [0, 1]], [[1, -1], [0, 1]]),
	        ([[1, 0, 0], [2, 1, 0], [0, 3, 1]], [[1, 0, 0], [-2, 1, 0], [6, -3, 1]]),
	    ],
	)
	def test_integer_inverse__unimodular__integer_inverse(self, rows, expected):
		assert integer_inverse(rows) == expected

	@pytest.mark.parametrize("rows", [[[2, 0], [0, 1]], [[1, 2], [2, 4]]])
	def test_integer_inverse__not_unimodular__value_error(self, rows):
		with pytest.raises(ValueError):
			integer_inverse(rows)
