"""JSON models for ROABPs, their sums and the weakness experiment report."""

from pydantic import BaseModel, Field

from ipslab.schemas.reports import BalancedFrequencyReport


class LayerModel(BaseModel):
    """One layer: a rows x cols matrix of univariate labels."""

    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    labels: list[list[list[str | int]]] = Field(
        description="labels[r][c] is the ascending coefficient list of the edge label."
    )


class RoabpModel(BaseModel):
    """A single ROABP; the variable universe defaults to the order's names."""

    field: str = Field(default="Q", description="Field spec of the coefficients.")
    modulus: list[int] | None = Field(default=None)
    vars: list[str] | None = Field(
        default=None,
        description="Variable universe by id; the order's names when omitted.",
    )
    order: list[str] = Field(
        description="Variable read by each layer, first layer first."
    )
    layers: list[LayerModel]


class SumRoabpModel(BaseModel):
    members: list[RoabpModel] = Field(min_length=1)


class WeaknessTrial(BaseModel):
    """One sampled balanced partition and the caps it induces."""

    trial: int
    y: list[str]
    z: list[str]
    imbalances: list[list[float]] = Field(
        description="Per summand, per segment: ||Y_j| - |Z_j|| / 2."
    )
    d_counts: list[int] = Field(
        description="Per summand: segments whose imbalance is at most sqrt(r)/4."
    )
    term_caps: list[int] = Field(
        description="Per summand: prod_j 2^{min(|Y_j|, |Z_j|)}, the rank cap of one path term."
    )
    summand_cap: int = Field(description="sum_i s_i^{q-1} * term_caps[i].")
    uniform_cap: int = Field(
        description="t * s^{q-1} * max term cap with s the largest width."
    )
    measured: int = Field(description="Exact rank of M_{Y,Z} of the extracted sum.")
    holds: bool
    segments_hold: bool | None = Field(
        default=None,
        description="For width-1 summands: every segment rank is within 2^{min(|Y_j|, |Z_j|)}.",
    )


class WeaknessReport(BaseModel):
    n: int
    q: int
    r: int
    t: int
    widths: list[int]
    field: str
    seed: int
    trials: list[WeaknessTrial] = Field(default_factory=list)
    all_hold: bool
    below_half_rank: float = Field(
        description="Fraction of trials with measured < 2^{n/2}."
    )
    eps_mean: float = Field(
        description="Mean of sum_j imbalance_j / (q sqrt(r) / 4) for the largest term cap."
    )
    eps_min: float
    d_mean: float


class WeaknessPipelineReport(BaseModel):
    """The weakness experiment together with the checks on its partition sampler."""

    weakness: WeaknessReport
    balanced: BalancedFrequencyReport
    marginal_max_deviation: float = Field(
        description="Largest |Pr[v in Y] - 1/2| over the variables of the balanced sampler."
    )
    marginal_ok: bool = Field(description="The deviation is within 4 standard errors.")
