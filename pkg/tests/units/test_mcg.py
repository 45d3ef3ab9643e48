# -- IMPORTS --

# -- Standard libraries --
import json
import random

# -- 3rd party libraries --
import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

# -- Internal libraries --
from subtorelli.exceptions import ConfigError, InvalidWord, NotAClosedCurve
from subtorelli.homology import class_of
from subtorelli.mcg import (
	Catalog,
	MappingClass,
	TwistGenerator,
	acts_trivially_on_H1P,
	apply,
	is_P_bounding_pair,
	is_P_separating,
	load_catalog,
	random_word,
	standard_catalog,
	torelli_generators,
	torelli_violation,
	validate_generator,
)
from subtorelli.surface import (
	load_surface,
	make_surface,
	totally_separated_completion,
)
from subtorelli.winding import frame_gen, winding_difference, wtilde
from subtorelli.words import invert


MIXED_PARTITION = [['d1_1', 'd2_1', 'd3_1', 'd4_1'], ['d1_2', 'd2_2']]


class TestTwistGenerator:

	def test_TwistGenerator__boundary_twist__alpha_and_action(self):
		S = make_surface(1, [['d1', 'd2']])

		T = TwistGenerator('Tb1', S.word('b1'), {'t1': S.word('t1 b1')}, {'t1': S.word('t1 ~b1')})

		assert T.alpha == {'t1': 1}
		assert T.act(S.word('~t2 t1')).text == '~t2 t1 b1'
		assert T.act(S.word('~t2 t1 b1'), -1).text == '~t2 t1'
		assert T.kind == 'twist'

	def test_TwistGenerator__image_carries_alpha_times_core_corners(self):
		S = make_surface(1, [['d1']])
		core = S.word('x1').corners

		T = standard_catalog(S).generators['Tx1']

		assert T.alpha == {'y1': -1}
		assert T.table['y1'].corners == {k: -v for k, v in core.items()}
		assert T.inverse_table['y1'].corners == core

	@pytest.mark.parametrize("variant", ["canonical", "alternative"])
	@pytest.mark.parametrize(
	    "name, edge",
	    [
	        ('Tx1', 'y1'),
	        ('Ty1', 'x1'),
	    ],
	)
	def test_TwistGenerator__handle_twist__winding_changes_by_alpha_times_core(self, name, edge, variant):
		S = make_surface(1, [['d1']])
		F = frame_gen(S, variant)
		T = standard_catalog(S).generators[name]
		f = MappingClass([(T, 1)])

		assert winding_difference(F, f, S.word(edge)) == T.alpha[edge] * wtilde(F, T.core)
		assert winding_difference(F, f.inverse(), S.word(edge)) == -T.alpha[edge] * wtilde(F, T.core)

	@pytest.mark.parametrize(
	    "core, forward, backward",
	    [
	        ('t1 b1', {'t1': 't1 b1'}, {'t1': 't1 ~b1'}),
	        ('b1', {'t1': 't1 b1'}, {'t2': 't2 ~b2'}),
	        ('b1', {'t1': 't1 b1 b1'}, {'t1': 't1 ~b1'}),
	        ('b1', {'t2': 't2 b2'}, {'t2': 't2 ~b2'}),
	    ],
	)
	def test_TwistGenerator__inconsistent_tables__config_error(self, core, forward, backward):
		S = make_surface(1, [['d1', 'd2']])
		w = S.word

		with pytest.raises(ConfigError):
			TwistGenerator(
				'T', w(core),
				{e: w(t) for e, t in forward.items()},
				{e: w(t) for e, t in backward.items()},
			)


class TestMappingClass:

	def test_MappingClass__text_inverse_and_composition(self):
		cat = standard_catalog(make_surface(1, [['d1', 'd2']]))
		f = cat.parse('Tb1 Tb2^-1')

		assert f.text == 'Tb1 Tb2^-1'
		assert str(f.inverse()) == 'Tb2 Tb1^-1'
		assert (f * f.inverse()).text == 'Tb1 Tb2^-1 Tb2 Tb1^-1'
		assert MappingClass().text == 'id'
		assert MappingClass().is_identity
		assert len(f * f) == 4

	def test_apply__rightmost_generator_first(self):
		S = make_surface(1, [['d1']])
		cat = standard_catalog(S)

		assert apply(cat.parse('Tx1'), S.word('y1')).text == '~x1 y1'
		assert apply(cat.parse('Ty1 Tx1'), S.word('y1')).text == '~y1 ~x1 y1'
		assert cat.parse('Tx1')(S.word('x1')) == S.word('x1')

	@settings(derandomize=True, max_examples=60)
	@given(st.lists(st.sampled_from(['Tx1', 'Ty1', 'Tb1', 'Tb2', 'Trun1_2', 'Trun2_3']), min_size=1, max_size=4))
	def test_apply__word_then_inverse__identity_on_every_edge(self, names):
		S = make_surface(1, [['d1', 'd2']])
		f = standard_catalog(S).parse(' '.join(names))

		for edge in S.spine.edges:
			w = S.word(edge)
			received = apply(f.inverse(), apply(f, w))
			assert received.letters == w.letters
			assert received.corners == w.corners

	@settings(derandomize=True, max_examples=60)
	@given(st.lists(st.sampled_from(['Tx1', 'Ty1', 'Tb1', 'Tb2', 'Trun1_1', 'Trun2_3']), min_size=1, max_size=3))
	def test_apply__any_word__fixes_boundary_loops_and_disk_face(self, names):
		S = make_surface(1, [['d1', 'd2']])
		f = standard_catalog(S).parse(' '.join(names))

		for loop in ('b1', 'b2'):
			assert apply(f, S.word(loop)) == S.word(loop)
		R = S.spine.face_word(S.spine.disk_faces[0])
		assert class_of(apply(f, R), S).is_zero


class TestCatalog:

	def test_standard_catalog__sigma_1_2__generators_and_aliases(self):
		cat = standard_catalog(make_surface(1, [['d1', 'd2']]))

		assert list(cat.generators) == ['Tx1', 'Ty1', 'Tb1', 'Tb2', 'Trun1_1', 'Trun1_2', 'Trun2_3']
		assert cat.aliases == {
			'Tsep1': 'Trun1_1',
			'Tsep2': 'Trun2_3',
			'Tbp1': 'Tb1 Tb2^-1',
			'Tbp2': 'Tb1 Trun1_2^-1',
			'Tbp3': 'Tb2 Trun1_2^-1',
		}
		assert 'Tbp1' in cat and 'Tx1' in cat and 'Tz1' not in cat

	@pytest.mark.parametrize(
	    "genus, blocks",
	    [
	        (1, [['d1']]),
	        (2, [['d1']]),
	        (1, [['d1', 'd2']]),
	        (1, [['d1'], ['d2']]),
	        (2, MIXED_PARTITION),
        (3, [['d1']]),
	    ],
	)
	def test_standard_catalog__every_generator__passes_validation(self, genus, blocks):
		S = make_surface(genus, blocks)

		for generator in standard_catalog(S).generators.values():
			validate_generator(generator, S)

	@pytest.mark.parametrize("fixture", ['sigma_2_1', 'sigma_2_2', 'sigma_3_1'])
	def test_standard_catalog__genus_2_or_more__band_twist_pairs_with_handle_twist(self, fixture):
		S = load_surface(fixture)
		cat = standard_catalog(S)

		T = cat.generators['Tband1']
		name = next(n for n, w in cat.aliases.items() if w == 'Tx1 Tband1^-1')

		assert T.kind == 'band'
		assert T.core.text == 'x1 x2 ~y2 ~x2 y2'
		assert class_of(T.core, S) == class_of(S.word('x1'), S)
		assert T.core.corners != S.word('x1').corners
		assert name in torelli_generators(cat, S)
		assert torelli_violation(cat.parse('Tband1'), S) == 'y1'

	def test_standard_catalog__completion__catalog_of_the_root(self):
		S = make_surface(1, [['d1', 'd2']])
		T, _ = totally_separated_completion(S)

		assert standard_catalog(T).surface == S

	@pytest.mark.parametrize(
	    "text, expected",
	    [
	        ('Tbp1', 'Tb1 Tb2^-1'),
	        ('Tbp1^-1', 'Tb2 Tb1^-1'),
	        ('Tsep1^2', 'Trun1_1 Trun1_1'),
	        ('Tx1^-2 Ty1', 'Tx1^-1 Tx1^-1 Ty1'),
	        ('', 'id'),
	    ],
	)
	def test_parse__aliases_and_exponents__expanded(self, text, expected):
		cat = standard_catalog(make_surface(1, [['d1', 'd2']]))

		assert cat.parse(text).text == expected

	@pytest.mark.parametrize("text", ['Tq9', 'Tx1^', 'Tx1^a', '^2', 'Tx1 ~Ty1'])
	def test_parse__bad_tokens__invalid_word(self, text):
		cat = standard_catalog(make_surface(1, [['d1', 'd2']]))

		with pytest.raises(InvalidWord):
			cat.parse(text)

	def test_parse__circular_aliases__invalid_word(self):
		S = make_surface(1, [['d1']])
		cat = Catalog(S, standard_catalog(S).generators.values(), {'A': 'B', 'B': 'A'})

		with pytest.raises(InvalidWord):
			cat.parse('A')

	def test_Catalog__alias_shadowing_generator__config_error(self):
		S = make_surface(1, [['d1']])

		with pytest.raises(ConfigError):
			Catalog(S, standard_catalog(S).generators.values(), {'Tx1': 'Ty1'})

	def test_Catalog__json_round_trip__same_generators(self):
		S = make_surface(1, [['d1', 'd2']])
		cat = standard_catalog(S)

		received = Catalog.from_json(json.loads(json.dumps(cat.to_json())), S)

		assert received.generators == cat.generators
		assert received.aliases == cat.aliases

	def test_load_catalog__shipped_fixture__bounding_pair_alias(self):
		S = load_surface('sigma_1_2')

		cat = load_catalog('catalog_sigma_1_2', S)

		assert list(cat.generators) == ['Tx1', 'Ty1', 'Tb1', 'Tb2']
		assert cat.parse('Tbp1').text == 'Tb1 Tb2^-1'

	def test_load_catalog__wrong_surface__config_error(self):
		with pytest.raises(ConfigError):
			load_catalog('catalog_sigma_1_2', load_surface('sigma_1_1'))

	def test_load_catalog__tampered_table__config_error(self, tmp_path):
		S = make_surface(1, [['d1', 'd2']])
		data = standard_catalog(S).to_json()
		data['generators'][0]['forward'] = {'y1': 'x1 y1'}
		data['generators'][0]['backward'] = {'y1': '~x1 y1'}
		path = tmp_path / 'catalog.json'
		path.write_text(json.dumps(data))

		with pytest.raises(ConfigError):
			load_catalog(path, S)


class TestTorelli:

	@pytest.mark.parametrize(
	    "text, expected",
	    [
	        ('Tbp1', None),
	        ('Tsep1', None),
	        ('Tx1', 'y1'),
	        ('Ty1', 'x1'),
	        ('Tb1', 'h1_1'),
	        ('id', None),
	    ],
	)
	def test_torelli_violation__sigma_1_2__first_moved_label(self, text, expected):
		S = make_surface(1, [['d1', 'd2']])
		cat = standard_catalog(S)
		f = MappingClass() if text == 'id' else cat.parse(text)

		assert torelli_violation(f, S) == expected
		assert acts_trivially_on_H1P(f, S) == (expected is None)

	def test_torelli_generators__sigma_1_2__aliases_in_torelli(self):
		S = make_surface(1, [['d1', 'd2']])

		assert torelli_generators(standard_catalog(S)) == ['Tsep1', 'Tsep2', 'Tbp1', 'Tbp2', 'Tbp3']

	def test_torelli_generators__separated_partition__fewer_constraints(self):
		S = make_surface(1, [['d1'], ['d2']])

		received = torelli_generators(standard_catalog(S), S)

		assert 'Tsep1' in received
		for name in received:
			assert acts_trivially_on_H1P(standard_catalog(S).parse(name), S)

	def test_is_P_separating__curves__null_classes_only(self):
		S = make_surface(1, [['d1', 'd2']])

		assert is_P_separating(S.word('t1 b1 ~t1 t2 b2 ~t2'), S)
		assert is_P_separating(S.word('x1 y1 ~x1 ~y1'), S)
		assert not is_P_separating(S.word('t1 b1 ~t1'), S)

		with pytest.raises(NotAClosedCurve):
			is_P_separating(S.word('~t2 t1'), S)

	def test_is_P_bounding_pair__boundary_loops__pair_up_to_orientation(self):
		S = make_surface(1, [['d1', 'd2']])
		b1 = S.word('t1 b1 ~t1')
		b2 = invert(S.word('t2 b2 ~t2'))

		assert is_P_bounding_pair(b1, b2, S)
		assert not is_P_bounding_pair(b1, b1, S)
		assert not is_P_bounding_pair(S.word('x1'), S.word('y1'), S)

		with pytest.raises(NotAClosedCurve):
			is_P_bounding_pair(b1, S.word('~t2 t1'), S)

	def test_random_word__seeded__reproducible_and_in_torelli(self):
		S = load_surface('sigma_2_6_mixed')
		cat = standard_catalog(S)
		names = torelli_generators(cat, S)

		first = random_word(cat, names, 3, random.Random(7))
		second = random_word(cat, names, 3, random.Random(7))

		assert first == second
		assert acts_trivially_on_H1P(first, S)

	def test_random_word__no_names__config_error(self):
		cat = standard_catalog(make_surface(1, [['d1']]))

		with pytest.raises(ConfigError):
			random_word(cat, [], 2, random.Random(0))
