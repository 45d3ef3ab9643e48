# -- IMPORTS --

# -- Standard libraries --
import itertools

# -- 3rd party libraries --
import pytest
import sympy

from hypothesis import given, settings
from hypothesis import strategies as st

# -- Internal libraries --
from subtorelli.exceptions import (
	ArcAcrossBlocks,
	DecompositionMismatch,
	NotAClosedCurve,
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
	psi_star,
	psi_star_inv,
	pullback,
	r_star,
	wedge,
)
from subtorelli.surface import (
	attach_handles,
	load_surface,
	make_surface,
	totally_separated_completion,
)


MIXED_PARTITION = [['d1_1', 'd2_1', 'd3_1', 'd4_1'], ['d1_2', 'd2_2']]

SURFACES = [
	(1, [['d1']]),
	(2, [['d1']]),
	(1, [['d1', 'd2']]),
	(2, MIXED_PARTITION),
]


class TestIntersection:

	@pytest.mark.parametrize(
	    "a, b, expected",
	    [
	        ({'x1': 1}, {'y1': 1}, 1),
	        ({'y1': 1}, {'x1': 1}, -1),
	        ({'x1': 1}, {'x1': 1}, 0),
	        ({'x1': 2}, {'y1': -3}, -6),
	        ({'x1': 1}, {'x2': 1}, 0),
	        ({'x1': 1}, {'b1': 1}, 0),
	    ],
	)
	def test_intersection__hub_cycles__correct_numbers(self, a, b, expected):
		spine = make_surface(2, [['d1']]).spine

		assert intersection(a, b, spine) == expected

	def test_intersection__not_a_cycle__not_a_closed_curve(self):
		spine = make_surface(1, [['d1']]).spine

		with pytest.raises(NotAClosedCurve):
			intersection({'t1': 1}, {'x1': 1}, spine)

	@pytest.mark.parametrize("genus, blocks", SURFACES)
	def test_intersection__closed_basis_words__agree_with_pairing_table(self, genus, blocks):
		S = make_surface(genus, blocks)
		B = basis_of(S)
		closed = [i for i, w in enumerate(B.words) if w.is_closed]

		for i, j in itertools.product(closed, repeat=2):
			received = intersection(B.words[i].chain(), B.words[j].chain(), S.spine)
			assert received == B.pairing[i][j]

	def test_intersection__completion__ribbon_pairing_equals_source_table(self):
		S = make_surface(1, [['d1', 'd2']])
		T, _ = totally_separated_completion(S)

		assert basis_of(T).pairing == basis_of(S).pairing


class TestBasis:

	@pytest.mark.parametrize(
	    "genus, blocks, expected_size",
	    [
	        (1, [['d1']], 2),
	        (2, [['d1']], 4),
	        (1, [['d1', 'd2']], 4),
	        (1, [['d1'], ['d2']], 2),
	        (0, [['d1', 'd2', 'd3']], 4),
	        (2, MIXED_PARTITION, 12),
	    ],
	)
	def test_basis_of__size__twice_genus_plus_twice_block_excess(self, genus, blocks, expected_size):
		B = basis_of(make_surface(genus, blocks))

		assert B.size == expected_size
		assert len(B.labels) == len(B.words) == expected_size

	@pytest.mark.parametrize("genus, blocks", SURFACES)
	def test_basis_of__pairing__antisymmetric_unimodular(self, genus, blocks):
		B = basis_of(make_surface(genus, blocks))
		M = sympy.Matrix(B.pairing)

		assert M.T == -M
		assert M.det() in (1, -1)
		assert sympy.Matrix(B.inverse_pairing) * M == sympy.eye(B.size)

	def test_basis_of__cached_per_surface(self):
		assert basis_of(make_surface(1, [['d1']])) is basis_of(make_surface(1, [['d1']], name='other'))

	def test_index__unknown_label__decomposition_mismatch(self):
		with pytest.raises(DecompositionMismatch):
			basis_of(make_surface(1, [['d1']])).index('z9')

	def test_coordinates__chain_outside_span__none(self):
		B = basis_of(make_surface(1, [['d1', 'd2']]))

		assert B.coordinates({'t1': 1}) is None
		assert B.coordinates({'x1': 1, 'y1': 2}) == (1, 2, 0, 0)


class TestClassOf:

	@pytest.mark.parametrize(
	    "text, expected",
	    [
	        ('x1 y1 ~x1', {'y1': 1}),
	        ('x1 y1 ~x1 ~y1', {}),
	        ('t1 b1 ~t1', {'S1_1': 1}),
	        ('t2 b2 ~t2', {'S1_1': -1}),
	        ('t1 b1 ~t1 t2 b2 ~t2', {}),
	        ('~t2 t1', {'h1_1': 1}),
	        ('b2 ~t2 t1', {'h1_1': 1, 'S1_1': -1}),
	        ('~t2 x1 t1', {'x1': 1, 'h1_1': 1}),
	        ('~t1 t2', {'h1_1': -1}),
	    ],
	)
	def test_class_of__words_on_sigma_1_2__correct_classes(self, text, expected):
		S = make_surface(1, [['d1', 'd2']])

		assert class_of(S.word(text), S).as_dict() == expected

	def test_class_of__disk_face__zero(self):
		S = make_surface(2, MIXED_PARTITION)

		assert class_of(S.spine.face_word(S.spine.disk_faces[0]), S).is_zero

	def test_class_of__arc_across_blocks__arc_across_blocks_error(self):
		S = make_surface(1, [['d1'], ['d2']])

		with pytest.raises(ArcAcrossBlocks):
			class_of(S.word('~t2 t1'), S)

	def test_class_of__arc_from_the_hub__arc_across_blocks_error(self):
		S = make_surface(1, [['d1', 'd2']])

		with pytest.raises(ArcAcrossBlocks):
			class_of(S.word('t1'), S)

	def test_class_of__mixed_blocks_arcs__basis_coordinates(self):
		S = load_surface('sigma_2_6_mixed')

		assert class_of(S.word('~t4 t1'), S).as_dict() == {'h1_1': 1, 'h1_2': 1, 'h1_3': 1}
		assert class_of(S.word('~t6 t5'), S).as_dict() == {'h2_1': 1}


class TestHClassAndCochain:

	def test_HClass__arithmetic__coordinatewise(self):
		B = basis_of(make_surface(1, [['d1']]))
		x, y = B.element('x1'), B.element('y1')

		assert (x + y).coords == (1, 1)
		assert (x - y).coords == (1, -1)
		assert (-x).coords == (-1, 0)
		assert (3 * x).coords == (3, 0)
		assert (x - x).is_zero
		assert repr(x + y) == 'HClass(1*[x1] + 1*[y1])'

	def test_HClass__different_surfaces__decomposition_mismatch(self):
		x = basis_of(make_surface(1, [['d1']])).element('x1')
		y = basis_of(make_surface(2, [['d1']])).element('y1')

		with pytest.raises(DecompositionMismatch):
			x + y
		with pytest.raises(DecompositionMismatch):
			pair(x, y)

	def test_Cochain__evaluation__pairs_values_with_coordinates(self):
		B = basis_of(make_surface(1, [['d1']]))
		c = Cochain(B, (2, -1))

		assert c(B.element('x1') + B.element('y1')) == 1
		assert (c + c).values == (4, -2)
		assert (c - c).is_zero
		assert c.as_dict() == {'x1': 2, 'y1': -1}

	@pytest.mark.parametrize("genus, blocks", SURFACES)
	def test_dual_D__evaluation__is_intersection_with_the_class(self, genus, blocks):
		B = basis_of(make_surface(genus, blocks))

		for a, b in itertools.product(B.labels, repeat=2):
			u, v = B.element(a), B.element(b)
			assert dual_D(v)(u) == pair(u, v)

	@settings(derandomize=True, max_examples=50)
	@given(st.lists(st.integers(min_value=-5, max_value=5), min_size=12, max_size=12))
	def test_dual_D_inv__mixed_blocks__inverse_of_dual_D(self, coords):
		B = basis_of(load_surface('sigma_2_6_mixed'))
		a = HClass(B, coords)

		assert dual_D_inv(dual_D(a)) == a


class TestWedge:

	def test_Wedge3__unsorted_triples__sorted_with_sign(self):
		B = basis_of(make_surface(2, [['d1']]))

		received = Wedge3(B, {(1, 0, 2): 1, (0, 0, 3): 5, (3, 2, 1): 2})

		assert received.terms == {(0, 1, 2): -1, (1, 2, 3): -2}

	def test_wedge__multilinear_alternating(self):
		B = basis_of(make_surface(2, [['d1']]))
		x1, y1, x2 = B.element('x1'), B.element('y1'), B.element('x2')

		assert wedge(x1, y1, x2) == Wedge3.of_labels(B, 'x1', 'y1', 'x2')
		assert wedge(x1, x1, x2).is_zero
		assert wedge(x1 + y1, y1, x2) == wedge(x1, y1, x2)
		assert wedge(y1, x1, x2) == -wedge(x1, y1, x2)

	@pytest.mark.parametrize(
	    "labels, expected",
	    [
	        (('x1', 'y1', 'x2'), {'x2': 2}),
	        (('x1', 'y1', 'y2'), {'y2': 2}),
	        (('x1', 'x2', 'y2'), {'x1': 2}),
	        (('y1', 'x2', 'y2'), {'y1': 2}),
	    ],
	)
	def test_contract_C__basis_trivectors__twice_the_free_factor(self, labels, expected):
		B = basis_of(make_surface(2, [['d1']]))

		assert contract_C(Wedge3.of_labels(B, *labels)).as_dict() == expected

	def test_contract_C__genus_three_trivector__zero(self):
		B = basis_of(make_surface(3, [['d1']]))

		assert contract_C(Wedge3.of_labels(B, 'x1', 'x2', 'x3')).is_zero


class TestDecompositionMaps:

	def test_psi_K__arc_systems__identity_and_boundary_shift(self):
		S = make_surface(1, [['d1', 'd2']])
		_, e = totally_separated_completion(S)
		h = basis_of(S).element('h1_1')

		assert psi_K(h, e).as_dict() == {'h1_1': 1}
		assert psi_K(h, e, arcs="K'").as_dict() == {'h1_1': 1, 'S1_1': 1}

	@pytest.mark.parametrize('arcs', ['K', "K'"])
	def test_psi_K_inv__mixed_blocks__inverse_of_psi_K(self, arcs):
		S = load_surface('sigma_2_6_mixed')
		_, e = totally_separated_completion(S)
		B = basis_of(S)

		for label in B.labels:
			a = B.element(label)
			assert psi_K_inv(psi_K(a, e, arcs=arcs), e, arcs=arcs) == a

	def test_psi_star__inverse_of_psi_star_inv(self):
		S = make_surface(1, [['d1', 'd2']])
		_, e = totally_separated_completion(S)
		c = Cochain(basis_of(S), (1, 2, 3, 4))

		assert psi_star(psi_star_inv(c, e, arcs="K'"), e, arcs="K'") == c

	def test_psi_K__class_from_wrong_surface__decomposition_mismatch(self):
		S = make_surface(1, [['d1', 'd2']])
		T, e = totally_separated_completion(S)

		with pytest.raises(DecompositionMismatch):
			psi_K(basis_of(T).element('x1'), e)

	def test_project_r__attached_handles__complement_coordinates_dropped(self):
		S = make_surface(1, [['d1'], ['d2']])
		T, e = attach_handles(S, 'd1')
		B = basis_of(T)

		a = B.element('x1') + B.element('yv1_1')

		assert project_r(a, e).as_dict() == {'x1': 1}
		assert include_s(project_r(a, e), e).as_dict() == {'x1': 1}

	def test_r_star__attached_handles__zero_on_complement(self):
		S = make_surface(1, [['d1'], ['d2']])
		T, e = attach_handles(S, 'd1')

		received = r_star(Cochain(basis_of(S), (5, 7)), e)

		assert received.as_dict() == {'x1': 5, 'y1': 7, 'xv1_1': 0, 'yv1_1': 0}

	def test_pullback__dual_of_inclusion__evaluates_through_psi(self):
		S = make_surface(1, [['d1', 'd2']])
		T, e = totally_separated_completion(S)
		c = Cochain(basis_of(S), (0, 0, 0, 1))

		assert pullback(c, e).as_dict() == {'x1': 0, 'y1': 0, 'h1_1': 0, 'S1_1': 1}
		assert pullback(c, e, arcs="K'").as_dict() == {'x1': 0, 'y1': 0, 'h1_1': -1, 'S1_1': 1}
