"""
Experiment configuration and dispatch for rauzykit runs.

An ExperimentConfig names one command and its inputs; run_experiment runs it
and returns a RunRecord echoing the configuration, the result payload and the
error (if any) with its machine-readable code.
"""

import logging
import time
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from iet.aiet import Aiet, make_iet, random_lengths
from iet.exceptions import ConfigInvalidError, EXIT_SUCCESS, RauzyKitError, ReportIOError, TieError
from iet.keane import check_keane
from iet.permutation import Permutation, genus, rauzy_class
from iet.scalars import ArithmeticMode, format_vector, parse_scalar, parse_vector, to_mode
from induction.path import write_edges_jsonl
from induction.walk import RauzyWalk
from oseledets.bcc import bcc_monitor
from oseledets.spectrum import lyapunov_spectrum
from oseledets.subspace import estimate_ecs, growth_rate
from solver.cone import cone_diameter_trace
from solver.semiconjugacy import verify_semiconjugacy
from solver.uniqueness import solve_unique_aiet

logger = logging.getLogger(__name__)

TOOLKIT_VERSION = "0.1.0"

Command = Literal['induce', 'solve', 'lyapunov', 'ecs', 'bcc', 'cone-trace', 'verify']


class ExperimentConfig(BaseModel):
    """One experiment. Vectors are strings (decimal or "p/q") in alphabet order."""

    model_config = ConfigDict(extra='forbid')

    command: Command
    top: str
    bottom: str
    lengths: Optional[List[str]] = None
    omega: Optional[List[str]] = None
    candidate_lengths: Optional[List[str]] = None
    mode: Literal['rational', 'float', 'multiprecision'] = 'rational'
    tolerance: float = 1e-8
    max_steps: int = 10000
    verify_depth: int = 100
    depth: int = 100
    ecs_depth: Optional[int] = None
    iterations: int = 100000
    seed: int = 0
    V: float = 10.0
    N: int = 2
    zorich_cap: Optional[int] = None
    mp_dps: Optional[int] = None
    stream_path: Optional[str] = None
    output: Optional[str] = None
    formats: List[Literal['json', 'csv', 'plotdata']] = Field(default_factory=lambda: ['json'])

    @field_validator('lengths', 'omega', 'candidate_lengths', mode='before')
    @classmethod
    def _as_strings(cls, value):
        if value is None:
            return None
        if isinstance(value, str):
            value = [part for part in value.replace(',', ' ').split() if part]
        return [str(v) for v in value]

    @field_validator('lengths', 'omega', 'candidate_lengths')
    @classmethod
    def _parseable(cls, value):
        if value is not None:
            for text in value:
                parse_scalar(text, ArithmeticMode.RATIONAL)
        return value

    @field_validator('tolerance', 'V')
    @classmethod
    def _positive(cls, value):
        if not value > 0:
            raise ValueError("must be positive")
        return value

    @field_validator('max_steps', 'depth', 'iterations', 'N', 'verify_depth')
    @classmethod
    def _non_negative(cls, value):
        if value < 0:
            raise ValueError("must be non-negative")
        return value

    @model_validator(mode='after')
    def _dimensions(self):
        top, bottom = self.top.split(), self.bottom.split()
        if len(top) < 2 or sorted(top) != sorted(bottom) or len(set(top)) != len(top):
            raise ValueError("top and bottom rows must list the same distinct symbols")
        for name in ('lengths', 'omega', 'candidate_lengths'):
            vector = getattr(self, name)
            if vector is not None and len(vector) != len(top):
                raise ValueError(f"{name} has {len(vector)} entries for {len(top)} symbols")
        if self.command == 'verify' and self.candidate_lengths is None:
            raise ValueError("verify needs candidate_lengths")
        return self

    @property
    def arithmetic(self) -> ArithmeticMode:
        return ArithmeticMode(self.mode)


def parse_config(data: Any) -> ExperimentConfig:
    """Validate a dict or JSON text; any failure is ``config-invalid``."""
    try:
        if isinstance(data, (str, bytes)):
            return ExperimentConfig.model_validate_json(data)
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigInvalidError(
            "Invalid experiment configuration",
            errors=[{'loc': list(e['loc']), 'msg': e['msg']} for e in exc.errors()],
        ) from exc


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise ReportIOError(f"Cannot read config {path}: {exc}", path=str(path)) from exc
    return parse_config(text)


@dataclass
class RunRecord:
    """Self-describing result of one experiment."""

    config: Dict[str, Any]
    command: str
    seed: int
    status: str = 'success'
    version: str = TOOLKIT_VERSION
    wall_time: float = 0.0
    payload: Dict[str, Any] = field(default_factory=dict)
    error: Optional[Dict[str, Any]] = None
    exit_code: int = EXIT_SUCCESS
    traces: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    run_id: str = field(default_factory=lambda: datetime.now().strftime("%Y%m%d_%H%M%S_%f"))

    @property
    def succeeded(self) -> bool:
        return self.status == 'success'

    def to_dict(self) -> Dict[str, Any]:
        return {
            'run_id': self.run_id,
            'command': self.command,
            'seed': self.seed,
            'status': self.status,
            'version': self.version,
            'wall_time': self.wall_time,
            'config': self.config,
            'payload': self.payload,
            'error': self.error,
            'exit_code': self.exit_code,
        }


# Command handlers ------------------------------------------------------------------


def build_iet(config: ExperimentConfig) -> Aiet:
    """The IET named by the config; random lengths from the seed when omitted."""
    perm = Permutation.from_rows(config.top, config.bottom)
    mode = config.arithmetic
    if config.lengths is not None:
        lengths = parse_vector(config.lengths, mode)
    else:
        lengths = random_lengths(perm.d, np.random.default_rng(config.seed), mode)
    return make_iet(perm, lengths, mode=mode)


def _omega(config: ExperimentConfig, f: Aiet) -> list:
    if config.omega is None:
        return [0] * f.d
    return list(parse_vector(config.omega, config.arithmetic))


def _trace(header: List[str], rows: List[tuple]) -> Dict[str, Any]:
    return {'header': header, 'rows': [list(r) for r in rows]}


def _run_induce(config: ExperimentConfig, f: Aiet, record: RunRecord) -> None:
    verdict = check_keane(f, config.depth)
    payload: Dict[str, Any] = {
        'genus': genus(f.perm),
        'rauzy_class_size': len(rauzy_class(f.perm)),
        'keane': verdict.to_dict(),
        'tie_step': None,
    }
    walk = RauzyWalk(f)
    edges = []
    try:
        for _ in range(config.depth):
            edges.append(walk.step())
    except TieError as exc:
        payload['tie_step'] = exc.step
    payload['path'] = [edge.to_dict() for edge in edges]
    if config.stream_path:
        payload['streamed_edges'] = write_edges_jsonl(config.stream_path, f.perm, edges)
        payload['stream_path'] = config.stream_path
    payload['final'] = walk.current().to_dict()
    record.payload = payload


def _run_solve(config: ExperimentConfig, f: Aiet, record: RunRecord) -> None:
    report = solve_unique_aiet(
        f,
        _omega(config, f),
        config.tolerance,
        config.max_steps,
        verify_depth=config.verify_depth,
    )
    record.payload = report.to_dict()
    record.traces['diameter'] = _trace(['step', 'diameter', 'logscale'], report.diameter_trace.rows())


def _run_lyapunov(config: ExperimentConfig, f: Aiet, record: RunRecord) -> None:
    estimate = lyapunov_spectrum(f, config.iterations, config.seed, zorich_cap=config.zorich_cap)
    record.payload = estimate.to_dict()
    header = ['k'] + [f'theta_{i}' for i in range(1, f.d + 1)]
    record.traces['lyapunov'] = _trace(header, [(k, *theta) for k, theta in estimate.trace])


def _run_ecs(config: ExperimentConfig, f: Aiet, record: RunRecord) -> None:
    estimate = estimate_ecs(f, config.ecs_depth or config.depth, zorich_cap=config.zorich_cap)
    record.payload = estimate.to_dict()
    horizon = max(4, config.depth // 8)
    rate = growth_rate(f, list(estimate.precise_basis[:, 0]), horizon, zorich_cap=config.zorich_cap)
    record.traces['growth'] = _trace(['k', 'rate'], list(enumerate(rate.trace, start=1)))


def _run_bcc(config: ExperimentConfig, f: Aiet, record: RunRecord) -> None:
    ecs = estimate_ecs(f, config.ecs_depth or config.depth, zorich_cap=config.zorich_cap)
    report = bcc_monitor(f, ecs, config.V, config.N, config.depth)
    record.payload = {'ecs': ecs.to_dict(), 'bcc': report.to_dict()}


def _run_cone_trace(config: ExperimentConfig, f: Aiet, record: RunRecord) -> None:
    trace = cone_diameter_trace(f, _omega(config, f), config.depth)
    record.payload = {'trace': trace.to_dict()}
    record.traces['diameter'] = _trace(['step', 'diameter', 'logscale'], trace.rows())


def _run_verify(config: ExperimentConfig, f: Aiet, record: RunRecord) -> None:
    mode = config.arithmetic
    candidate = parse_vector(config.candidate_lengths, mode)
    verified = verify_semiconjugacy(
        f,
        candidate,
        _omega(config, f),
        config.depth,
        closure_tolerance=None if mode.is_exact else to_mode(config.tolerance, mode),
    )
    record.payload = {'verified': verified, 'depth': config.depth, 'lengths': format_vector(candidate)}


HANDLERS: Dict[str, Callable[[ExperimentConfig, Aiet, RunRecord], None]] = {
    'induce': _run_induce,
    'solve': _run_solve,
    'lyapunov': _run_lyapunov,
    'ecs': _run_ecs,
    'bcc': _run_bcc,
    'cone-trace': _run_cone_trace,
    'verify': _run_verify,
}


def run_experiment(config: ExperimentConfig, *, write: bool = True) -> RunRecord:
    """Run one experiment; errors are captured in the record, not raised.

    When ``config.output`` is set and ``write`` is true the record is written
    there in every requested format.
    """
    record = RunRecord(config=config.model_dump(mode='json'), command=config.command, seed=config.seed)
    started = time.perf_counter()
    logger.info("Running %s (seed %d, mode %s)", config.command, config.seed, config.mode)
    try:
        if config.mp_dps:
            with mpmath.workdps(config.mp_dps):
                HANDLERS[config.command](config, build_iet(config), record)
        else:
            HANDLERS[config.command](config, build_iet(config), record)
    except RauzyKitError as exc:
        record.status = 'error'
        record.error = exc.to_dict()
        record.exit_code = exc.exit_code
        trace = getattr(exc, 'trace', None)
        if trace:
            record.traces['diameter'] = _trace(['step', 'diameter', 'logscale'], trace)
        logger.warning("%s failed: [%s] %s", config.command, exc.code, exc.message)
    record.wall_time = time.perf_counter() - started

    if write and config.output:
        from cli.report_writer import emit_report

        for fmt in config.formats:
            emit_report(record, fmt, config.output)
    return record


__all__ = [
    'ExperimentConfig',
    'RunRecord',
    'HANDLERS',
    'TOOLKIT_VERSION',
    'build_iet',
    'load_config',
    'parse_config',
    'run_experiment',
]
