"""Parameter sweeps over (gamma, Lambda, t) and their CSV output.

Config files are INI-style::

    [particle]
    m = 1.2e-24
    sigma0 = 7.8e-9
    ell0 = 50e-9        # or inf

    [sweep]
    gamma = -3, 0, 3
    lambda = log(1e19, 1e24, 60)
    t = 1e-6
    outputs = mu, C     # optional, default: every column

Lists are comma separated; ``lin(a, b, n)`` and ``log(a, b, n)`` expand
to ranges. Instead of ``lambda`` a ``[bath]`` section may describe the
environment (``model = scattering`` with T, M, N, w, or ``model = ohmic``
with lambda0, Delta, Omega, T).
"""

from __future__ import annotations

import configparser
import csv
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Dict, List, Optional, Sequence

import numpy as np

from .bath import FULLERENE, BathSpec, OhmicBath, ParticleSpec, ScatteringGas
from .errors import ConfigError, DomainError, InvalidStateError
from .evolution import EvolutionPoint
from .observables import (
    NU_TOL,
    bose_entropy,
    coherence_length_p,
    coherence_length_x,
    covariance,
    purity,
    relative_entropy_coherence,
    symplectic_nu,
)

QUANTITIES = ["s11", "s22", "s12", "nu", "mu", "lx2", "lp2", "C", "S"]
PARTICLE_KEYS = {"m", "sigma0", "ell0", "hbar", "kB"}
SWEEP_KEYS = {"gamma", "lambda", "t", "outputs", "out"}
BATH_KEYS = {
    "scattering": {"model", "T", "M", "N", "w"},
    "ohmic": {"model", "lambda0", "Delta", "Omega", "T"},
}
CHUNK = 4096
THREADS_ENV = "DECOGAUSS_THREADS"

_RANGE = re.compile(r"^\s*(lin|log)\s*\(([^)]*)\)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class SweepRow:
    gamma: float
    lam: float
    t: float
    s11: float
    s22: float
    s12: float
    nu: float
    mu: float
    lx2: float
    lp2: float
    C: float
    S: float


@dataclass
class SweepConfig:
    particle: ParticleSpec = FULLERENE
    gamma_list: Sequence[float] = (0.0,)
    lambda_list: Sequence[float] = (0.0,)
    t_list: Sequence[float] = (1e-6,)
    outputs: List[str] = field(default_factory=lambda: list(QUANTITIES))
    out: Optional[str] = None

    def __post_init__(self):
        for name in ("gamma_list", "lambda_list", "t_list"):
            if len(getattr(self, name)) == 0:
                raise ConfigError(f"{name} is empty")
        bad = [q for q in self.outputs if q not in QUANTITIES]
        if bad:
            raise ConfigError(f"unknown output quantities: {', '.join(bad)}")


def parse_values(text: str, line=None) -> List[float]:
    """``"1, 2, 3"``, ``"lin(a, b, n)"`` or ``"log(a, b, n)"`` to floats."""
    m = _RANGE.match(text)
    try:
        if m:
            kind, args = m.group(1).lower(), [a.strip() for a in m.group(2).split(",")]
            if len(args) != 3:
                raise ConfigError(f"{kind}() takes (min, max, count)", line)
            lo, hi, count = float(args[0]), float(args[1]), int(args[2])
            if count < 1:
                raise ConfigError("range count must be >= 1", line)
            if kind == "log":
                if lo <= 0 or hi <= 0:
                    raise ConfigError("log ranges need positive endpoints", line)
                return list(np.geomspace(lo, hi, count))
            return list(np.linspace(lo, hi, count))
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse {text!r}: {exc}", line) from None
    if not vals:
        raise ConfigError("empty value list", line)
    return vals


def _line_numbers(text: str) -> Dict[tuple, int]:
    lines: Dict[tuple, int] = {}
    section = None
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s.startswith("[") and s.endswith("]"):
            section = s[1:-1].strip()
            lines[(section, None)] = no
        elif "=" in s and not s.startswith(("#", ";")):
            lines[(section, s.split("=", 1)[0].strip())] = no
    return lines


def _bath_lambda(sec, where) -> float:
    model = sec.get("model", "").strip().lower()
    if model not in BATH_KEYS:
        raise ConfigError("bath model must be 'scattering' or 'ohmic'", where("bath", "model"))
    for key in sec:
        if key not in BATH_KEYS[model]:
            raise ConfigError(f"unknown key {key!r} for {model} bath", where("bath", key))
    try:
        vals = {k: float(v) for k, v in sec.items() if k != "model"}
        if model == "scattering":
            return BathSpec(scattering=ScatteringGas(**vals)).decoherence_rate()
        return vals, OhmicBath(**vals)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad bath parameters: {exc}", where("bath", None)) from None


def load_config(path) -> SweepConfig:
    """Read a sweep configuration; errors carry the offending line number."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    lines = _line_numbers(text)

    def where(section, key):
        return lines.get((section, key), lines.get((section, None)))

    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None

    for section in cp.sections():
        if section not in ("particle", "sweep", "bath"):
            raise ConfigError(f"unknown section [{section}]", where(section, None))

    pvals = {}
    if cp.has_section("particle"):
        for key, val in cp["particle"].items():
            if key not in PARTICLE_KEYS:
                raise ConfigError(f"unknown particle key {key!r}", where("particle", key))
            try:
                pvals[key] = float(val)  # float() accepts "inf"
            except ValueError:
                raise ConfigError(f"{key} must be a number, got {val!r}", where("particle", key)) from None
    base = {f.name: getattr(FULLERENE, f.name) for f in fields(FULLERENE)}
    base.update(pvals)
    try:
        particle = ParticleSpec(**base)
    except DomainError as exc:
        raise ConfigError(str(exc), where("particle", None)) from None

    if not cp.has_section("sweep"):
        raise ConfigError("missing [sweep] section")
    sw = cp["sweep"]
    for key in sw:
        if key not in SWEEP_KEYS:
            raise ConfigError(f"unknown sweep key {key!r}", where("sweep", key))

    lambdas = None
    if "lambda" in sw:
        lambdas = parse_values(sw["lambda"], where("sweep", "lambda"))
    if cp.has_section("bath"):
        if lambdas is not None:
            raise ConfigError("give either sweep.lambda or a [bath] section, not both", where("bath", None))
        res = _bath_lambda(cp["bath"], where)
        if isinstance(res, tuple):
            res = BathSpec(ohmic=res[1]).decoherence_rate(particle.m)
        lambdas = [float(res)]
    if lambdas is None:
        raise ConfigError("no lambda values: set sweep.lambda or add a [bath] section", where("sweep", None))
    if any(v < 0 for v in lambdas):
        raise ConfigError("lambda values must be >= 0", where("sweep", "lambda"))

    gammas = parse_values(sw.get("gamma", "0"), where("sweep", "gamma"))
    times = parse_values(sw.get("t", "1e-6"), where("sweep", "t"))
    if any(v < 0 for v in times):
        raise ConfigError("times must be >= 0", where("sweep", "t"))
    outputs = list(QUANTITIES)
    if "outputs" in sw:
        outputs = [q.strip() for q in sw["outputs"].split(",") if q.strip()]
        bad = [q for q in outputs if q not in QUANTITIES]
        if bad:
            raise ConfigError(f"unknown output quantities: {', '.join(bad)}", where("sweep", "outputs"))
    return SweepConfig(particle, gammas, lambdas, times, outputs, sw.get("out"))


def evaluate(particle: ParticleSpec, gamma, lam, t) -> Dict[str, np.ndarray]:
    """Every sweep quantity for matching arrays of gamma, Lambda, t."""
    p = particle.with_gamma(np.asarray(gamma, dtype=float))
    e = EvolutionPoint(np.asarray(t, dtype=float), np.asarray(lam, dtype=float))
    c = covariance(p, e)
    nu = symplectic_nu(c)
    return {
        "gamma": np.asarray(gamma, dtype=float),
        "lambda": np.asarray(lam, dtype=float),
        "t": np.asarray(t, dtype=float),
        "s11": np.asarray(c.s11),
        "s22": np.asarray(c.s22),
        "s12": np.asarray(c.s12),
        "nu": np.asarray(nu),
        "mu": np.asarray(purity(p, e)),
        "lx2": np.asarray(coherence_length_x(p, e)),
        "lp2": np.asarray(coherence_length_p(p, e)),
        "C": np.asarray(relative_entropy_coherence(c)),
        "S": np.asarray(bose_entropy((np.asarray(nu) - 1) / 2)),
    }


def validate_rows(cols: Dict[str, np.ndarray]):
    if np.any(cols["nu"] < 1 - NU_TOL):
        raise InvalidStateError("row with nu < 1")
    if np.any(cols["mu"] > 1 + NU_TOL):
        raise InvalidStateError("row with mu > 1")
    if np.any(cols["C"] < 0):
        raise InvalidStateError("row with negative coherence")


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return min(4, os.cpu_count() or 1)
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def sweep_columns(cfg: SweepConfig, threads: Optional[int] = None) -> Dict[str, np.ndarray]:
    """Evaluate the whole grid; rows are ordered lexicographically in (gamma, Lambda, t)."""
    G, L, T = np.meshgrid(cfg.gamma_list, cfg.lambda_list, cfg.t_list, indexing="ij")
    G, L, T = G.ravel(), L.ravel(), T.ravel()
    bounds = [(i, min(i + CHUNK, len(G))) for i in range(0, len(G), CHUNK)]
    workers = threads or _threads()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda b: evaluate(cfg.particle, G[b[0]:b[1]], L[b[0]:b[1]], T[b[0]:b[1]]), bounds))
    cols = {k: np.concatenate([np.atleast_1d(p[k]) for p in parts]) for k in parts[0]}
    validate_rows(cols)
    return cols


def rows(cols: Dict[str, np.ndarray]) -> List[SweepRow]:
    n = len(cols["gamma"])
    return [
        SweepRow(
            gamma=cols["gamma"][i], lam=cols["lambda"][i], t=cols["t"][i],
            **{q: float(cols[q][i]) for q in QUANTITIES},
        )
        for i in range(n)
    ]


def fmt(v) -> str:
    """17 significant digits, scientific notation."""
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.16e}"


def write_csv(path, columns: Sequence[str], data: Dict[str, Sequence]):
    n = len(data[columns[0]])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for i in range(n):
            w.writerow([v if isinstance(v, str) else fmt(v) for v in (data[c][i] for c in columns)])


def run_sweep(cfg: SweepConfig, out=None, threads: Optional[int] = None) -> str:
    path = out or cfg.out
    if not path:
        raise ConfigError("no output path given")
    cols = sweep_columns(cfg, threads)
    write_csv(path, ["gamma", "lambda", "t", *cfg.outputs], cols)
    return path
