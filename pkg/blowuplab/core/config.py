"""
@file core/config.py
@brief RunConfig: the validated run configuration and the objects built from it.

@details
Loading goes JSON text -> RunConfigForm -> RunConfig. Syntax and validation
errors become ConfigurationError messages of the form "<path>:<line>: ...",
pointing at the offending field when it can be located in the text.
to_document() emits a document that parses back to an identical RunConfig.
"""

import json
import logging
import re
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from bounds.hypotheses import PhysParams, compute_bound_report
from core.descriptors import parse_descriptor
from core.exceptions import ConfigurationError
from core.forms import RunConfigForm
from detwave.solver import DetProblem, default_horizon
from montecarlo.campaign import Campaign
from spde.engine import SpdeSpec
from spectral.geometry import Boundary, Interval, SpatialGrid

logger = logging.getLogger(__name__)

DESCRIPTOR_FIELDS = ("u0", "v0")


def _freeze(value):
    return tuple(value) if isinstance(value, list) else value


def _thaw(value):
    return list(value) if isinstance(value, tuple) else value


@dataclass(frozen=True)
class RunConfig:
    """
    @brief Every parameter of a run, validated.
    """
    J: float
    kappa: float
    r: float
    u0: object
    v0: object
    c1: float = 0.0
    c2: float = 0.0
    f_choice: str = "power"
    nx: int = 128
    cfl: float = 0.5
    L: float = 1e3
    epsilon: float = 0.5
    n_paths: int = 512
    delta: float = 0.0
    master_seed: int = 0
    boundary: str = "periodic"
    output_dir: str = "runs"
    horizon: float | None = None
    checkpoint_every: int = 1
    workers: int | None = None

    # ───────────────────────────────────────────────
    # Parsing
    # ───────────────────────────────────────────────

    @classmethod
    def from_document(cls, document, source="<config>", text=None):
        """
        @brief Validates a parsed document through RunConfigForm.

        @param source Name used in error messages.
        @param text Original JSON text, used to locate the line of a bad field.
        @raises ConfigurationError On unknown or invalid fields.
        """
        if not isinstance(document, dict):
            raise ConfigurationError(f"{source}:1: the configuration must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(document) - known)
        if unknown:
            name = unknown[0]
            raise ConfigurationError(f"{source}:{_line_of(text, name)}: unknown field {name!r}")

        data = dict(document)
        for name in DESCRIPTOR_FIELDS:
            if name in data:
                data[name] = json.dumps(data[name])
        form = RunConfigForm(data=data)
        if not form.is_valid():
            name, errors = next(iter(form.errors.items()))
            line = _line_of(text, name) if name != "__all__" else 1
            raise ConfigurationError(f"{source}:{line}: {name}: {' '.join(errors)}")
        cleaned = form.cleaned_data
        values = {f.name: cleaned.get(f.name) for f in fields(cls)}
        for name in DESCRIPTOR_FIELDS:
            values[name] = _freeze(values[name])
        return cls(**values)

    @classmethod
    def from_text(cls, text, source="<config>"):
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{source}:{exc.lineno}: {exc.msg}") from None
        return cls.from_document(document, source=source, text=text)

    @classmethod
    def load(cls, path):
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigurationError(f"{path}:0: cannot read configuration ({exc.strerror})") from None
        return cls.from_text(text, source=str(path))

    def to_document(self):
        document = asdict(self)
        for name in DESCRIPTOR_FIELDS:
            document[name] = _thaw(document[name])
        return document

    def with_overrides(self, **overrides):
        """
        @brief Copy with the non-None overrides applied, re-validated.
        """
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if not overrides:
            return self
        document = self.to_document()
        document.update(overrides)
        return RunConfig.from_document(document, source="<overrides>")

    # ───────────────────────────────────────────────
    # Built objects
    # ───────────────────────────────────────────────

    @property
    def domain(self):
        return Interval(self.J)

    @property
    def params(self):
        return PhysParams(c1=self.c1, c2=self.c2, kappa=self.kappa, r=self.r)

    @property
    def grid(self):
        return SpatialGrid(J=self.J, nx=self.nx)

    @property
    def dt(self):
        return self.cfl * self.grid.dx

    @property
    def u0_func(self):
        return parse_descriptor(self.u0, self.J)

    @property
    def v0_func(self):
        return parse_descriptor(self.v0, self.J)

    def bound_report(self, rtol=None):
        return compute_bound_report(self.u0_func, self.v0_func, self.params, self.domain, self.grid, rtol=rtol)

    def det_problem(self):
        return DetProblem(self.domain, self.params, self.u0_func, self.v0_func, Boundary.DIRICHLET)

    def det_horizon(self, T):
        if self.horizon is not None:
            return self.horizon
        return default_horizon(T, self.epsilon, self.J)

    def spde_spec(self, T):
        return SpdeSpec(
            domain=self.domain,
            params=self.params,
            u0=self.u0_func,
            v0=self.v0_func,
            T_bound=T,
            epsilon=self.epsilon,
            L=self.L,
            f_choice=self.f_choice,
            boundary=Boundary(self.boundary),
            checkpoint_every=self.checkpoint_every,
        )

    def campaign(self, T):
        return Campaign(
            spec=self.spde_spec(T),
            grid=self.grid,
            dt=self.dt,
            n_paths=self.n_paths,
            master_seed=self.master_seed,
            delta=self.delta,
            labels={name: _thaw(getattr(self, name)) for name in DESCRIPTOR_FIELDS},
        )


def _line_of(text, name):
    if not text:
        return 1
    pattern = re.compile(r'"' + re.escape(name) + r'"\s*:')
    for number, line in enumerate(text.splitlines(), start=1):
        if pattern.search(line):
            return number
    return 1
