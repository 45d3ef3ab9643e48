from __future__ import annotations


__all__ = [
    'RunConfig',
    'build_parser',
    'cmd_basis',
    'cmd_cap',
    'cmd_eval',
    'cmd_frame_gen',
    'cmd_verify',
    'main',
]


# -- IMPORTS --

# -- Standard libraries --
import argparse
import json
import logging
import sys

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

# -- 3rd party libraries --

# -- Internal libraries --
sys.path.insert(0, str(Path(__file__).parent.parent))

from subtorelli.chillingworth import evaluate, run_battery
from subtorelli.exceptions import (
    ConfigError,
    InvalidPartition,
    InvalidWord,
    SubtorelliError,
)
from subtorelli.homology import basis_of
from subtorelli.mcg import Catalog, MappingClass, load_catalog, standard_catalog
from subtorelli.surface import PartitionedSurface, load_surface, totally_separated_completion
from subtorelli.version import __version__
from subtorelli.winding import Framing, FramingVariant, frame_gen, load_framing


logger = logging.getLogger(__name__)

#: Exit code of a run whose checks all passed
EXIT_OK = 0

#: Exit code of a failed check, a non-Torelli input or an inconsistent framing
EXIT_CHECK_FAILED = 1

#: Exit code of a configuration error: bad files, mismatched hashes, bad words
EXIT_CONFIG_ERROR = 2

#: Names of the framings `frame_gen` builds
VARIANTS = tuple(v.name.lower() for v in FramingVariant)


@dataclass(frozen=True)
class RunConfig:
    """A validated command line invocation."""
    command: str
    surface: str = 'sigma_1_2'
    catalog: str | None = None
    framings: tuple[str, ...] = ()
    word: str | None = None
    seed: int = 0
    out: Path | None = None
    verbose: int = 0
    words: int = 20
    pairs: int = 200

    @classmethod
    def from_args(cls, args: argparse.Namespace, /) -> RunConfig:
        if args.command == 'eval' and not args.word:
            raise ConfigError('`eval` needs a mapping class `--word`')
        if args.words < 1 or args.pairs < 1:
            raise ConfigError('`--words` and `--pairs` must be positive')

        return cls(
            command=args.command,
            surface=args.surface,
            catalog=args.catalog,
            framings=tuple(args.framing or ()),
            word=args.word,
            seed=args.seed,
            out=Path(args.out) if args.out else None,
            verbose=args.verbose,
            words=args.words,
            pairs=args.pairs,
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='subtorelli',
        description='Generalized Chillingworth classes of subsurface Torelli groups, with machine checks.'
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--surface',
        default='sigma_1_2',
        help='Surface JSON file, or the name of a shipped fixture such as `sigma_2_6_mixed` (default: sigma_1_2).',
    )
    common.add_argument(
        '--catalog',
        default=None,
        help='Catalog JSON file or fixture; defaults to the standard catalog of the surface.',
    )
    common.add_argument(
        '--framing',
        action='append',
        default=None,
        help='Framing JSON file, fixture, or generated variant (`canonical`, `alternative`). Repeatable.',
    )
    common.add_argument('--word', default=None, help='Mapping class word, e.g. "Tb1 Tb2^-1".')
    common.add_argument('--seed', type=int, default=0, help='Seed of the randomized checks (default: 0).')
    common.add_argument('--words', type=int, default=20, help='Random Torelli words per naturality, corollary and representative independence case.')
    common.add_argument('--pairs', type=int, default=200, help='Random pairs per homomorphism case.')
    common.add_argument('--out', default=None, help='Write the JSON report here instead of stdout.')
    common.add_argument('-v', '--verbose', action='count', default=0, help='Log progress to stderr; repeat for debug.')

    commands = parser.add_subparsers(dest='command', required=True)
    commands.add_parser('basis', parents=[common], help='Print the basis of H_1^P with representative words.')
    commands.add_parser('eval', parents=[common], help='Evaluate e_tilde, t and, on one-boundary surfaces, tau.')
    commands.add_parser('verify', parents=[common], help='Run the verification battery.')
    commands.add_parser('cap', parents=[common], help='Print the totally separated completion of the surface.')
    commands.add_parser('frame-gen', parents=[common], help='Print a generated framing of the surface.')

    return parser


def _framing(surface: PartitionedSurface, source: str, /) -> Framing:
    if source in VARIANTS:
        return frame_gen(surface, source)

    return load_framing(source, surface)


def _catalog(config: RunConfig, surface: PartitionedSurface, /) -> Catalog:
    if config.catalog is None:
        return standard_catalog(surface)

    return load_catalog(config.catalog, surface)


def _mapping_class(catalog: Catalog, text: str, /) -> MappingClass:
    if text.strip() in ('', 'id'):
        return MappingClass()

    return catalog.parse(text)


def cmd_basis(config: RunConfig, /) -> dict[str, Any]:
    """The ordered basis of the surface with representative words and pairing matrix."""
    surface = load_surface(config.surface)
    basis = basis_of(surface)
    report = {
        'surface': surface.name,
        'surface_hash': surface.hash,
        'genus': surface.genus,
        'partition': [list(block) for block in surface.partition],
        'basis': [
            {'label': label, 'word': word.text, 'closed': word.is_closed}
            for label, word in surface.basis_words
        ],
        'pairing': [list(row) for row in basis.pairing],
    }
    if surface.genus == 0:
        report['notice'] = 'genus 0: Torelli commands are refused on this surface'

    return report


def cmd_eval(config: RunConfig, /) -> dict[str, Any]:
    """The :py:class:`~subtorelli.chillingworth.EvalReport` of one mapping class."""
    surface = load_surface(config.surface)
    catalog = _catalog(config, surface)
    framing = _framing(surface, config.framings[0] if config.framings else 'canonical')
    f = _mapping_class(catalog, config.word or '')
    logger.info('evaluating `%s` on `%s` with framing `%s`', f.text, surface.name, framing.name)

    return evaluate(framing, f, surface).to_json()


def cmd_verify(config: RunConfig, /) -> dict[str, Any]:
    """Runs the battery; framings that are not variant names are checked on the given surface."""
    variants = [s for s in config.framings if s in VARIANTS]
    files = [s for s in config.framings if s not in variants]
    catalog = extra = None
    if files or config.catalog:
        surface = load_surface(config.surface)
        extra = [(surface, _framing(surface, s)) for s in files]
        if config.catalog:
            catalog = _catalog(config, surface)

    report = run_battery(
        config.seed,
        variants=tuple(variants) or ('canonical', 'alternative'),
        words=config.words,
        pairs=config.pairs,
        extra_framings=extra or (),
        catalog=catalog,
    )

    return report.to_json()


def cmd_cap(config: RunConfig, /) -> dict[str, Any]:
    """The totally separated completion of the surface and its embedding data."""
    surface = load_surface(config.surface)
    completion, embedding = totally_separated_completion(surface)

    return {
        'surface': surface.name,
        'surface_hash': surface.hash,
        'completion': {
            'surface_hash': completion.hash,
            'genus': completion.genus,
            'partition': [list(block) for block in completion.partition],
            'basis': [{'label': label, 'word': word.text} for label, word in completion.basis_words],
        },
        'arc_systems': {
            name: {label: word.text for label, word in embedding.psi_words(name).items()}
            for name in embedding.arc_systems
        },
    }


def cmd_frame_gen(config: RunConfig, /) -> dict[str, Any]:
    """A generated framing of the surface, in the framing file format."""
    surface = load_surface(config.surface)
    variant = config.framings[0] if config.framings else 'canonical'
    if variant not in VARIANTS:
        raise ConfigError(f'`frame-gen` takes a framing variant, not `{variant}`')

    return frame_gen(surface, variant).to_json()


HANDLERS: dict[str, Callable[[RunConfig], dict[str, Any]]] = {
    'basis': cmd_basis,
    'eval': cmd_eval,
    'verify': cmd_verify,
    'cap': cmd_cap,
    'frame-gen': cmd_frame_gen,
}


def _emit(payload: dict[str, Any], out: Path | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + '\n'
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    except OSError as e:
        raise ConfigError(f'Cannot write report to `{out}`: {e}')
    logger.info('report written to `%s`', out)


def main(argv: Sequence[str] | None = None) -> int:
    """Console entry point; returns the process exit code.

    Examples
    --------
    >>> main(["eval", "--surface", "sigma_1_2", "--word", "Tx1"])
    {
      "error": "NotTorelli",
      "label": "y1",
      "message": "`Tx1` is not in the Torelli group of `sigma_1_2`: it moves `[y1]`"
    }
    1
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
        format='%(levelname)s %(name)s: %(message)s',
    )

    try:
        config = RunConfig.from_args(args)
        payload = HANDLERS[config.command](config)
        _emit(payload, config.out)
    except (ConfigError, InvalidPartition, InvalidWord) as e:
        logger.error('%s', e)
        _emit({'error': type(e).__name__, 'message': str(e)}, None)
        return EXIT_CONFIG_ERROR
    except SubtorelliError as e:
        logger.error('%s', e)
        error = {'error': type(e).__name__, 'message': str(e)}
        if getattr(e, 'label', None) is not None:
            error['label'] = e.label
        _emit(error, None)
        return EXIT_CHECK_FAILED

    if config.command == 'verify' and not payload['passed']:
        return EXIT_CHECK_FAILED

    return EXIT_OK


if __name__ == "__main__":      # pragma: no cover
    sys.exit(main())
