"""
Data models for the MIMO switch DMT toolkit using Pydantic.
Defines tradeoff curves, network configurations, solver outputs and simulation results.
"""

from enum import Enum
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from constants import Constants
from exceptions import InvalidArgumentError


class ChannelMode(str, Enum):
    """Relation between the uplink and downlink channels."""
    RECIPROCAL = "reciprocal"
    NONRECIPROCAL = "nonreciprocal"


class AntennaSpec(BaseModel):
    """Antenna counts of a point-to-point link or a symmetric MAC/BC."""
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    n: int = Field(ge=1)
    num_users: int = Field(default=1, ge=1)


class PiecewiseLinearCurve(BaseModel):
    """
    A diversity-multiplexing tradeoff d(r) stored as its vertices.
    Evaluation between vertices is linear, and zero beyond the last vertex.
    """
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[Tuple[float, float], ...]

    @model_validator(mode="after")
    def _check_vertices(self) -> "PiecewiseLinearCurve":
        if not self.vertices:
            raise ValueError("a curve needs at least one vertex")
        rs = np.array([v[0] for v in self.vertices], dtype=float)
        ds = np.array([v[1] for v in self.vertices], dtype=float)
        if rs[0] != 0.0:
            raise ValueError("the first vertex must sit at r = 0")
        if np.any(np.diff(rs) <= 0.0):
            raise ValueError("vertex r values must be strictly increasing")
        if np.any(ds < 0.0):
            raise ValueError("diversity values must be nonnegative")
        if np.any(np.diff(ds) > Constants.VERTEX_TOL):
            raise ValueError("diversity must be nonincreasing in r")
        if ds[-1] != 0.0:
            raise ValueError("the last vertex must have d = 0")
        return self

    @property
    def r_values(self) -> np.ndarray:
        return np.array([v[0] for v in self.vertices], dtype=float)

    @property
    def d_values(self) -> np.ndarray:
        return np.array([v[1] for v in self.vertices], dtype=float)

    @property
    def r_max(self) -> float:
        return self.vertices[-1][0]

    def evaluate(self, r: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """Vectorised evaluation; arguments past r_max give 0."""
        value = np.interp(r, self.r_values, self.d_values, right=0.0)
        if np.ndim(value) == 0:
            return float(value)
        return value

    def zero_crossing(self) -> float:
        """Smallest r at which the curve reaches zero diversity."""
        for r, d in self.vertices:
            if d == 0.0:
                return r
        return self.r_max

    def max_multiplexing_gain(self) -> float:
        return self.zero_crossing()

    def to_csv_rows(self) -> List[Dict[str, float]]:
        return [{"r": r, "d": d} for r, d in self.vertices]

    def to_json_dict(self) -> Dict[str, List[List[float]]]:
        return {"vertices": [[r, d] for r, d in self.vertices]}

    @classmethod
    def from_samples(
        cls,
        r: Sequence[float],
        d: Sequence[float],
        zero_at: Optional[float] = None,
    ) -> "PiecewiseLinearCurve":
        """
        Build a curve from sampled values.

        Args:
            r: Increasing sample locations starting at 0
            d: Diversity samples; forced nonincreasing by a running minimum
            zero_at: Exact zero crossing to insert as the final vertex

        Returns:
            The sampled curve, truncated at its first zero
        """
        rs = np.asarray(r, dtype=float)
        if rs.size == 0 or rs.size != len(d):
            raise InvalidArgumentError(f"need matching nonempty samples, got {rs.size} r values and {len(d)} d values")
        if rs[0] != 0.0:
            raise InvalidArgumentError(f"samples must start at r = 0, got r = {rs[0]}")
        ds = np.minimum.accumulate(np.clip(np.asarray(d, dtype=float), 0.0, None))
        vertices: List[Tuple[float, float]] = []
        for ri, di in zip(rs, ds):
            if zero_at is not None and ri >= zero_at:
                break
            vertices.append((float(ri), float(di)))
            if di == 0.0:
                return cls(vertices=tuple(vertices))
        if zero_at is not None and (not vertices or zero_at > vertices[-1][0]):
            vertices.append((float(zero_at), 0.0))
        elif vertices[-1][1] != 0.0:
            vertices.append((vertices[-1][0] + Constants.VERTEX_TOL, 0.0))
        return cls(vertices=tuple(vertices))


class NetworkConfig(BaseModel):
    """K user pairs served by one relay with M antennas."""
    model_config = ConfigDict(frozen=True)

    K: int = Field(ge=1)
    M: int = Field(ge=1)
    mode: ChannelMode = ChannelMode.RECIPROCAL

    @property
    def num_users(self) -> int:
        return 2 * self.K


class AllocationSolution(BaseModel):
    """Static phase-one time fraction and the diversity it yields at r."""
    model_config = ConfigDict(frozen=True)

    r: float = Field(ge=0.0)
    a_star: float = Field(gt=0.0, lt=1.0)
    diversity: float = Field(ge=0.0)
    residual: float = Field(ge=0.0)


class AlphaProfile(BaseModel):
    """Ordered eigenvalue level exponents of the uplink and downlink matrices."""
    model_config = ConfigDict(frozen=True)

    alpha1: Tuple[float, ...]
    alpha2: float = Field(ge=0.0)
    dims: Tuple[int, int, int]

    @model_validator(mode="after")
    def _check_order(self) -> "AlphaProfile":
        m1, m2, _ = self.dims
        if len(self.alpha1) != min(m1, m2):
            raise ValueError("alpha1 must hold min(M1, M2) exponents")
        a = np.asarray(self.alpha1, dtype=float)
        if np.any(a < 0.0):
            raise ValueError("level exponents must be nonnegative")
        if np.any(np.diff(a) > Constants.VERTEX_TOL):
            raise ValueError("alpha1 must be nonincreasing")
        return self

    def weights(self) -> Tuple[np.ndarray, float]:
        m1, m2, m3 = self.dims
        j = np.arange(1, len(self.alpha1) + 1)
        w1 = 2 * j - 1 + abs(m1 - m2)
        w2 = float(2 * 1 - 1 + abs(m2 - m3))
        return w1.astype(float), w2

    def cost(self) -> float:
        w1, w2 = self.weights()
        return float(np.dot(w1, self.alpha1) + w2 * self.alpha2)

    def s1(self) -> float:
        return float(np.sum(np.clip(1.0 - np.asarray(self.alpha1), 0.0, None)))

    def s2(self) -> float:
        return max(1.0 - self.alpha2, 0.0)


class OutagePoint(BaseModel):
    """Minimiser of the reduced outage-region problem."""
    model_config = ConfigDict(frozen=True)

    s1: float = Field(ge=0.0)
    s2: float = Field(ge=0.0, le=1.0)
    cost: float = Field(ge=0.0)


class DdfPoint(BaseModel):
    """Dynamic decode-and-forward diversity at one multiplexing gain."""
    model_config = ConfigDict(frozen=True)

    r: float
    diversity: float = Field(ge=0.0)
    argmin_L: int = Field(ge=1)
    per_subset_size: Dict[int, float]


class ListeningDecision(BaseModel):
    """How long the relay listens, as a fraction of the block."""
    model_config = ConfigDict(frozen=True)

    fraction: float = Field(ge=0.0)
    outage: bool


class ChannelDraw(BaseModel):
    """
    One quasi-static realisation of every user-relay channel.
    Row k of `uplink` / `downlink` is user k's M-vector.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    uplink: np.ndarray
    downlink: np.ndarray
    mode: ChannelMode

    @field_validator("uplink", "downlink")
    @classmethod
    def _complex_matrix(cls, value: np.ndarray) -> np.ndarray:
        if value.ndim != 2 or not np.iscomplexobj(value):
            raise ValueError("channel draws are complex (2K, M) arrays")
        return value


class SnrPoint(BaseModel):
    """Outage estimate at one SNR."""
    model_config = ConfigDict(frozen=True)

    snr_db: float
    trials: int = Field(ge=1)
    outage_count: int = Field(ge=0)
    p_hat: float = Field(ge=0.0, le=1.0)
    std_err: float = Field(ge=0.0)

    @classmethod
    def from_counts(cls, snr_db: float, trials: int, outage_count: int) -> "SnrPoint":
        p_hat = outage_count / trials
        return cls(
            snr_db=snr_db,
            trials=trials,
            outage_count=outage_count,
            p_hat=p_hat,
            std_err=float(np.sqrt(p_hat * (1.0 - p_hat) / trials)),
        )


class SimulationSummary(BaseModel):
    """JSON summary written next to a sweep CSV."""
    event: str
    pairs: int
    antennas: int
    mode: ChannelMode
    r: float
    seed: int
    trials: int
    fitted_exponent: Optional[float] = None
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    analytic_d: Optional[float] = None
    analytic_d_upper: Optional[float] = None
    fit_status: str
    fit_window: Optional[Tuple[float, float]] = None
    partial: bool = False


class SnrSweepResult(BaseModel):
    """Outage estimates over an SNR grid with the fitted diversity exponent."""
    event: str
    network: NetworkConfig
    r: float
    seed: int
    points: List[SnrPoint] = []
    fitted_exponent: Optional[float] = None
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    fit_window: Optional[Tuple[float, float]] = None
    fit_status: str = Constants.FIT_INSUFFICIENT_EVENTS
    analytic_d: Optional[float] = None
    analytic_d_upper: Optional[float] = None
    partial: bool = False

    def summary(self) -> SimulationSummary:
        return SimulationSummary(
            event=self.event,
            pairs=self.network.K,
            antennas=self.network.M,
            mode=self.network.mode,
            r=self.r,
            seed=self.seed,
            trials=self.points[0].trials if self.points else 0,
            fitted_exponent=self.fitted_exponent,
            ci_low=self.ci_low,
            ci_high=self.ci_high,
            analytic_d=self.analytic_d,
            analytic_d_upper=self.analytic_d_upper,
            fit_status=self.fit_status,
            fit_window=self.fit_window,
            partial=self.partial,
        )


class RunConfig(BaseModel):
    """Validated arguments of one CLI invocation."""
    command: str
    network: Optional[NetworkConfig] = None
    r_start: float = Field(default=0.0, ge=0.0)
    r_stop: float = Field(default=Constants.RECIPROCAL_R_STOP, ge=0.0)
    r_step: float = Field(default=Constants.R_STEP, gt=0.0)
    snr_grid_db: Tuple[float, ...] = ()
    trials: int = Field(default=1, ge=1)
    seed: int = Field(default=Constants.DEFAULT_SEED, ge=0)
    workers: int = Field(default=1, ge=1)
    output: Optional[str] = None
    fmt: Literal["csv", "json"] = "csv"
    event: Optional[str] = None
    r_value: Optional[float] = Field(default=None, ge=0.0)
    split: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    scheme: Optional[str] = None

    @model_validator(mode="after")
    def _check_grids(self) -> "RunConfig":
        if self.r_stop < self.r_start:
            raise ValueError("r grid is empty: stop lies below start")
        if self.command == "simulate" and not self.snr_grid_db:
            raise ValueError("simulate needs a non-empty SNR grid")
        return self
