"""
rauzykit command-line runner

Runs one experiment from a JSON config and/or flags, or a batch of configs in
parallel, and writes self-describing records.

Usage:
    python rauzykit.py --config data/fixtures/solve_golden.json --output runs/
    python rauzykit.py --command induce --top "A B C D" --bottom "D C B A" \\
        --lengths "1/10,2/10,3/10,4/10" --depth 50
    python rauzykit.py --batch data/fixtures/batch_smoke.json --workers 4
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config.env_loader import get_config
from cli.experiment import parse_config, run_experiment
from cli.formatter import CLIFormatter
from cli.report_writer import BatchIndex, emit_report
from iet.exceptions import ConfigInvalidError, RauzyKitError, ReportIOError

logger = logging.getLogger(__name__)

# flag name -> config field
FLAG_FIELDS = {
    'command': 'command',
    'top': 'top',
    'bottom': 'bottom',
    'lengths': 'lengths',
    'omega': 'omega',
    'candidate_lengths': 'candidate_lengths',
    'mode': 'mode',
    'tolerance': 'tolerance',
    'max_steps': 'max_steps',
    'verify_depth': 'verify_depth',
    'depth': 'depth',
    'ecs_depth': 'ecs_depth',
    'iterations': 'iterations',
    'seed': 'seed',
    'V': 'V',
    'N': 'N',
    'zorich_cap': 'zorich_cap',
    'mp_dps': 'mp_dps',
    'output': 'output',
    'stream_path': 'stream_path',
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="rauzykit: Rauzy induction and unique AIET experiments")
    source = parser.add_mutually_exclusive_group()
    source.add_argument('--config', type=str, help='JSON experiment config; flags override its fields')
    source.add_argument('--batch', type=str, help='JSON list of experiment configs to run in parallel')
    parser.add_argument('--workers', type=int, default=None, help='Processes for --batch (default: CPU count)')

    parser.add_argument('--command', choices=['induce', 'solve', 'lyapunov', 'ecs', 'bcc', 'cone-trace', 'verify'])
    parser.add_argument('--top', type=str, help='Top row of the permutation, e.g. "A B C D"')
    parser.add_argument('--bottom', type=str, help='Bottom row of the permutation, e.g. "D C B A"')
    parser.add_argument('--lengths', type=str,
                        help='Comma-separated lengths ("p/q" or decimal); random from --seed if omitted')
    parser.add_argument('--omega', type=str,
                        help='Comma-separated log-slopes; write --omega=-1/10,... for a leading minus')
    parser.add_argument('--candidate-lengths', dest='candidate_lengths', type=str,
                        help='Lengths to check with the verify command')
    parser.add_argument('--mode', choices=['rational', 'float', 'multiprecision'])
    parser.add_argument('--tolerance', type=float)
    parser.add_argument('--max-steps', dest='max_steps', type=int)
    parser.add_argument('--verify-depth', dest='verify_depth', type=int)
    parser.add_argument('--depth', type=int)
    parser.add_argument('--ecs-depth', dest='ecs_depth', type=int)
    parser.add_argument('--iterations', type=int)
    parser.add_argument('--seed', type=int)
    parser.add_argument('--V', dest='V', type=float, help='BCC norm bound')
    parser.add_argument('--N', dest='N', type=int, help='BCC positivity window')
    parser.add_argument('--zorich-cap', dest='zorich_cap', type=int)
    parser.add_argument('--mp-dps', dest='mp_dps', type=int, help='Working decimal digits for multiprecision')
    parser.add_argument('--output', type=str, help='Output directory for records and traces')
    parser.add_argument('--stream-path', dest='stream_path', type=str,
                        help='induce: also write the Rauzy path as JSON lines to this file')
    parser.add_argument('--format', dest='formats', action='append', choices=['json', 'csv', 'plotdata'],
                        help='Report format; repeat for several (default: json)')
    parser.add_argument('--quiet', action='store_true', help='Only print errors')
    parser.add_argument('--show-config', dest='show_config', action='store_true',
                        help='Log the RAUZYKIT_* settings before running')
    return parser


def config_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Config dict from --config (if any) with explicit flags layered on top."""
    data: Dict[str, Any] = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding='utf-8'))
        except OSError as e:
            raise ReportIOError(f"Cannot read config {args.config}: {e}", path=args.config) from e
        except json.JSONDecodeError as e:
            raise ConfigInvalidError(f"Config {args.config} is not valid JSON: {e}") from e
    for flag, key in FLAG_FIELDS.items():
        value = getattr(args, flag, None)
        if value is not None:
            data[key] = value
    if args.formats:
        data['formats'] = args.formats
    return data


def _run_batch_item(item: Tuple[int, Dict[str, Any], str]) -> Dict[str, Any]:
    """Run one batch entry in a worker process; never raises."""
    index, data, output = item
    summary: Dict[str, Any] = {'index': index, 'command': data.get('command'), 'seed': data.get('seed')}
    try:
        config = parse_config({**data, 'output': str(Path(output) / f"run_{index:03d}")})
        record = run_experiment(config)
    except RauzyKitError as e:
        summary.update({'status': 'error', 'exit_code': e.exit_code, 'error': e.to_dict(), 'wall_time': 0.0})
        return summary
    summary.update({
        'status': record.status,
        'exit_code': record.exit_code,
        'error': record.error,
        'wall_time': record.wall_time,
        'run_id': record.run_id,
        'directory': config.output,
    })
    return summary


def run_batch(path: str, output: Optional[str], workers: Optional[int], formatter: CLIFormatter) -> int:
    try:
        entries = json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as e:
        raise ReportIOError(f"Cannot read batch {path}: {e}", path=path) from e
    except json.JSONDecodeError as e:
        raise ConfigInvalidError(f"Batch {path} is not valid JSON: {e}") from e
    if isinstance(entries, dict):
        entries = entries.get('experiments', [])
    if not isinstance(entries, list):
        raise ConfigInvalidError("A batch is a JSON list of configs (or {'experiments': [...]})")

    out_dir = output or str(get_config().get_output_dir())
    index = BatchIndex(out_dir)
    items = [(i, dict(entry), out_dir) for i, entry in enumerate(entries)]
    logger.info(f"Running {len(items)} experiments with {workers or 'default'} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for summary in pool.map(_run_batch_item, items):
            index.add_run(summary)
    index_path = index.export()
    formatter.print_batch(index.runs)
    formatter.print_info(f"Batch index written to {index_path}")
    return index.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main execution function"""
    parser = build_parser()
    args = parser.parse_args(argv)

    env_config = get_config()
    run_logger = env_config.get_logger()
    formatter = CLIFormatter()
    if not args.quiet:
        formatter.print_banner()
    if args.show_config:
        env_config.print_config_summary()

    run_logger.info("=" * 80)
    run_logger.info("RAUZYKIT RUN")
    run_logger.info("=" * 80)

    try:
        if args.batch:
            return run_batch(args.batch, args.output, args.workers, formatter)

        config = parse_config(config_from_args(args))
        record = run_experiment(config, write=False)
        if config.output:
            written: List[str] = []
            for fmt in config.formats:
                written.extend(emit_report(record, fmt, config.output))
            if not args.quiet:
                for path in written:
                    formatter.print_info(f"Wrote {path}")
        elif not args.quiet:
            formatter.print_box(f"{record.command} record", json.dumps(record.to_dict(), indent=2, default=str)[:4000])
        if not args.quiet or not record.succeeded:
            formatter.print_record(record)
        return record.exit_code

    except RauzyKitError as e:
        formatter.print_error(f"[{e.code}] {e.message}")
        for err in e.details.get('errors', []):
            formatter.print_warning(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())


__all__ = ['build_parser', 'config_from_args', 'main', 'run_batch']

