# -- IMPORTS --

# -- Standard libraries --
import json

# -- 3rd party libraries --
import pytest

# -- Internal libraries --
from subtorelli.exceptions import (
	ConfigError,
	DecompositionMismatch,
	InvalidPartition,
	NotAClosedCurve,
)
from subtorelli.surface import (
	Embedding,
	Spine,
	attach_handles,
	check_embedding,
	compose,
	fixture_path,
	hub_items,
	identity_embedding,
	load_surface,
	make_surface,
	run_core,
	standard_certificates,
	surface_from_json,
	totally_separated_completion,
)


MIXED_PARTITION = [['d1_1', 'd2_1', 'd3_1', 'd4_1'], ['d1_2', 'd2_2']]


class TestSpine:

	def test_Spine__creation_and_initialisation__torus_with_one_hole(self):
		spine = make_surface(1, [['d1']]).spine

		assert spine.edges == ('x1', 'y1', 't1', 'b1')
		assert spine.vertices == ('H', 'q1')
		assert spine.disk_faces == (('x1', '~y1', '~x1', 'y1', 't1', '~b1', '~t1'),)
		assert spine.euler_characteristic == -1
		assert spine.boundary_loops == {'d1': 'b1'}

	def test_Spine__misplaced_half_edge__invalid_partition(self):
		with pytest.raises(InvalidPartition):
			Spine(
				{'x1': ('H', 'H'), 't1': ('H', 'q1'), 'b1': ('q1', 'q1')},
				{'H': ('x1+', 'x1-', 't1-'), 'q1': ('t1+', 'b1-', 'b1+')},
				{'d1': 'b1'},
			)

	def test_Spine__missing_half_edge__invalid_partition(self):
		with pytest.raises(InvalidPartition):
			Spine(
				{'x1': ('H', 'H'), 't1': ('H', 'q1'), 'b1': ('q1', 'q1')},
				{'H': ('x1+', 'x1-', 't1+'), 'q1': ('t1-', 'b1-')},
				{'d1': 'b1'},
			)

	def test_Spine__boundary_loop_without_own_face__invalid_partition(self):
		with pytest.raises(InvalidPartition):
			Spine(
				{'x1': ('H', 'H'), 't1': ('H', 'q1'), 'b1': ('q1', 'q1')},
				{'H': ('x1+', 'x1-', 't1+'), 'q1': ('t1-', 'b1+', 'b1-')},
				{'d1': 'b1'},
			)

	def test_Spine__next_half_edge__cyclic(self):
		spine = make_surface(1, [['d1']]).spine

		assert spine.next_half_edge('x1+') == 'y1+'
		assert spine.next_half_edge('t1+') == 'x1+'
		assert spine.position('y1-') == 3

	def test_face_word__disk_face__closed_smoothed_path(self):
		spine = make_surface(1, [['d1', 'd2']]).spine

		received = spine.face_word(spine.disk_faces[0])

		assert received.is_closed
		assert received.start == 'H'
		assert received.corners


class TestMakeSurface:

	@pytest.mark.parametrize(
	    "genus, blocks, expected_labels",
	    [
	        (1, [['d1']], ['x1', 'y1']),
	        (2, [['d1']], ['x1', 'y1', 'x2', 'y2']),
	        (1, [['d1', 'd2']], ['x1', 'y1', 'h1_1', 'S1_1']),
	        (1, [['d1'], ['d2']], ['x1', 'y1']),
	        (0, [['d1', 'd2', 'd3']], ['h1_1', 'h1_2', 'S1_1', 'S1_2']),
	        (
	            2, MIXED_PARTITION,
	            [
	                'x1', 'y1', 'x2', 'y2', 'h1_1', 'h1_2', 'h1_3', 'h2_1',
	                'S1_1', 'S1_2', 'S1_3', 'S2_1',
	            ]
	        ),
	    ],
	)
	def test_make_surface__valid_inputs__basis_labels_in_order(self, genus, blocks, expected_labels):
		received = make_surface(genus, blocks)

		assert [label for label, _ in received.basis_words] == expected_labels
		assert received.genus == genus
		assert received.is_canonical
		assert received.root is received

	@pytest.mark.parametrize(
	    "genus, blocks",
	    [
	        (-1, [['d1']]),
	        (1.5, [['d1']]),
	        (True, [['d1']]),
	        (1, []),
	        (1, [[]]),
	        (1, [['d1'], ['d1']]),
	        (1, [['d1', 'd1']]),
	        (1, [['']]),
	    ],
	)
	def test_make_surface__invalid_inputs__invalid_partition(self, genus, blocks):
		with pytest.raises(InvalidPartition):
			make_surface(genus, blocks)

	def test_make_surface__arc_and_sum_words__canonical_representatives(self):
		S = make_surface(2, MIXED_PARTITION)
		words = dict(S.basis_words)

		assert words['h1_1'].text == '~t2 t1'
		assert words['h1_2'].text == '~t3 t2'
		assert words['h2_1'].text == '~t6 t5'
		assert words['S1_2'].text == 't1 b1 ~t1 t2 b2 ~t2'
		assert (words['h1_1'].start, words['h1_1'].end) == ('q2', 'q1')

	def test_make_surface__pairing_table__symplectic_and_arc_sum_duality(self):
		S = make_surface(1, [['d1', 'd2', 'd3']])

		assert S.pairing_table == (
			(0, 1, 0, 0, 0, 0),
			(-1, 0, 0, 0, 0, 0),
			(0, 0, 0, 0, 1, 0),
			(0, 0, 0, 0, 0, 1),
			(0, 0, -1, 0, 0, 0),
			(0, 0, 0, -1, 0, 0),
		)

	def test_PartitionedSurface__hash__depends_on_description_only(self):
		a = make_surface(1, [['d1', 'd2']], name='a')
		b = make_surface(1, [['d1', 'd2']], name='b')
		c = make_surface(1, [['d1'], ['d2']])

		assert a == b and hash(a) == hash(b)
		assert a != c
		assert a.name == 'a'
		assert len(a.hash) == 64

	def test_PartitionedSurface__repr__blocks_shown(self):
		assert repr(make_surface(1, [['d1', 'd2']])) == 'PartitionedSurface(genus=1, partition=[{d1, d2}])'

	def test_PartitionedSurface__boundary_queries__correct_answers(self):
		S = make_surface(2, MIXED_PARTITION)

		assert S.block_of('d2_2') == 1
		assert S.boundary_loop('d3_1') == 'b3'
		assert S.boundary_at('q6') == 'd2_2'
		assert S.boundary_at('H') is None
		assert not S.is_totally_separated

		with pytest.raises(InvalidPartition):
			S.block_of('d9')


class TestHubRuns:

	def test_hub_items__handles_then_tails(self):
		expected = (('handle', 1), ('handle', 2), ('tail', 1))

		assert hub_items(make_surface(2, [['d1']])) == expected

	@pytest.mark.parametrize(
	    "first, last, expected",
	    [
	        (1, 1, 'x1 ~y1 ~x1 y1'),
	        (2, 3, 't1 ~b1 ~t1 t2 ~b2 ~t2'),
	        (1, 2, 'x1 ~y1 ~x1 y1 t1 ~b1 ~t1'),
	    ],
	)
	def test_run_core__valid_runs__correct_words(self, first, last, expected):
		assert run_core(make_surface(1, [['d1', 'd2']]), first, last).text == expected

	@pytest.mark.parametrize("first, last", [(0, 1), (2, 1), (1, 4)])
	def test_run_core__invalid_runs__invalid_partition(self, first, last):
		with pytest.raises(InvalidPartition):
			run_core(make_surface(1, [['d1', 'd2']]), first, last)


class TestCompletion:

	@pytest.mark.parametrize(
	    "genus, blocks, expected_genus, expected_partition",
	    [
	        (1, [['d1', 'd2']], 2, (('z1',),)),
	        (2, [['d1', 'd2']], 3, (('z1',),)),
	        (1, [['d1'], ['d2']], 1, (('z1',), ('z2',))),
	        (0, [['d1', 'd2', 'd3']], 2, (('z1',),)),
	        (2, MIXED_PARTITION, 6, (('z1',), ('z2',))),
	    ],
	)
	def test_totally_separated_completion__genus_grows_by_block_sizes(
		self, genus, blocks, expected_genus, expected_partition
	):
		S = make_surface(genus, blocks)

		T, e = totally_separated_completion(S)

		assert (T.genus, T.partition) == (expected_genus, expected_partition)
		assert T.is_totally_separated
		assert T.root == S
		assert not T.is_canonical
		assert len(T.basis_words) == len(S.basis_words)
		assert all(word.is_closed for _, word in T.basis_words)
		assert e.is_extension
		assert e.completion is T
		assert e.arc_systems == ('K', "K'")

	def test_totally_separated_completion__arc_systems__closures_through_the_cap(self):
		S = make_surface(1, [['d1', 'd2']])

		_, e = totally_separated_completion(S)

		assert e.psi_words('K')['h1_1'].text == '~t2 t1 e1 ~e2 b2'
		assert e.psi_words("K'")['h1_1'].text == '~t2 t1 e1 z1 ~e2'
		assert e.psi_words('K')['x1'] == e.psi_words("K'")['x1']

	def test_psi_words__unknown_arc_system__decomposition_mismatch(self):
		_, e = totally_separated_completion(make_surface(1, [['d1', 'd2']]))

		with pytest.raises(DecompositionMismatch):
			e.psi_words('L')

	def test_Embedding__no_completion__decomposition_mismatch(self):
		S = make_surface(1, [['d1']])

		with pytest.raises(DecompositionMismatch):
			Embedding(S, S, {}).completion

	def test_totally_separated_completion__complement_pieces__one_cap_per_block(self):
		S = make_surface(2, MIXED_PARTITION)

		_, e = totally_separated_completion(S)

		assert [p.name for p in e.pieces] == ['cap1', 'cap2']
		assert e.pieces[1].boundaries == ('d1_2', 'd2_2', 'z2')
		assert all(p.genus == 0 for p in e.pieces)


class TestAttachAndCompose:

	def test_attach_handles__totally_separated_source__handles_appended(self):
		S = make_surface(1, [['d1'], ['d2']])

		T, e = attach_handles(S, 'd1')

		assert (T.genus, T.partition) == (2, (('zv1',), ('d2',)))
		assert [label for label, _ in T.basis_words] == ['x1', 'y1', 'xv1_1', 'yv1_1']
		assert e.hat_labels == ('x1', 'y1')
		assert e.pieces[0].basis_labels == ('xv1_1', 'yv1_1')

	def test_attach_handles__genus_two__two_handles(self):
		T, _ = attach_handles(make_surface(1, [['d1']]), 'd1', genus=2)

		assert T.genus == 3
		assert len(T.basis_words) == 6

	@pytest.mark.parametrize(
	    "blocks, boundary, genus",
	    [
	        ([['d1', 'd2']], 'd1', 1),
	        ([['d1']], 'd9', 1),
	        ([['d1']], 'd1', -1),
	    ],
	)
	def test_attach_handles__invalid_inputs__invalid_partition(self, blocks, boundary, genus):
		with pytest.raises(InvalidPartition):
			attach_handles(make_surface(1, blocks), boundary, genus=genus)

	def test_compose__completion_then_attach__nested_embedding(self):
		S = make_surface(1, [['d1', 'd2']])
		hat, cap = totally_separated_completion(S)
		target, attach = attach_handles(hat, 'z1')

		received = compose(cap, attach)

		assert received.source == S
		assert received.target == target
		assert received.completion == hat
		assert received.hat_labels == cap.hat_labels
		assert received.is_extension
		assert [p.name for p in received.pieces] == ['cap1', 'V1']

	def test_compose__mismatched_embeddings__config_error(self):
		S = make_surface(1, [['d1', 'd2']])
		_, cap = totally_separated_completion(S)

		with pytest.raises(ConfigError):
			compose(cap, identity_embedding(S))


class TestCheckEmbedding:

	@pytest.mark.parametrize(
	    "genus, blocks",
	    [
	        (1, [['d1', 'd2']]),
	        (2, [['d1', 'd2']]),
	        (2, MIXED_PARTITION),
	    ],
	)
	def test_check_embedding__completion__both_conditions_hold(self, genus, blocks):
		S = make_surface(genus, blocks)
		_, e = totally_separated_completion(S)

		assert check_embedding(e, standard_certificates(S))

	def test_check_embedding__identity__holds(self):
		S = make_surface(1, [['d1']])

		assert check_embedding(identity_embedding(S), standard_certificates(S))

	def test_check_embedding__arc_certificate__not_a_closed_curve(self):
		S = make_surface(1, [['d1', 'd2']])

		with pytest.raises(NotAClosedCurve):
			check_embedding(identity_embedding(S), [S.word('~t2 t1')])

	def test_identity_embedding__foreign_target__config_error(self):
		with pytest.raises(ConfigError):
			identity_embedding(make_surface(2, [['d1']]), make_surface(1, [['d1']]))


class TestLoading:

	@pytest.mark.parametrize(
	    "name, expected_genus, expected_basis_size",
	    [
	        ('sigma_1_1', 1, 2),
	        ('sigma_2_1', 2, 4),
	        ('sigma_1_2', 1, 4),
	        ('sigma_0_3', 0, 4),
	        ('sigma_2_6_mixed', 2, 12),
	    ],
	)
	def test_load_surface__shipped_fixtures__correct_surfaces(self, name, expected_genus, expected_basis_size):
		received = load_surface(name)

		assert received.name == name
		assert received.genus == expected_genus
		assert len(received.basis_words) == expected_basis_size

	def test_load_surface__file_path__loaded(self, tmp_path):
		path = tmp_path / 'surface.json'
		path.write_text(json.dumps({'genus': 1, 'partition': [['a', 'b']]}))

		assert load_surface(path) == make_surface(1, [['a', 'b']])

	def test_load_surface__unknown_fixture__config_error(self):
		with pytest.raises(ConfigError):
			load_surface('no_such_surface')

	def test_load_surface__malformed_json__config_error(self, tmp_path):
		path = tmp_path / 'bad.json'
		path.write_text('{"genus": 1,')

		with pytest.raises(ConfigError):
			load_surface(path)

	def test_surface_from_json__missing_key__config_error(self):
		with pytest.raises(ConfigError):
			surface_from_json({'genus': 1})

	def test_fixture_path__with_and_without_suffix__same_file(self):
		assert fixture_path('sigma_2_6_mixed') == fixture_path('sigma_2_6_mixed.json')
