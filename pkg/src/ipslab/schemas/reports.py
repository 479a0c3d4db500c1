"""Report models for the measures and the pipelines built on them."""

from typing import Literal

from pydantic import BaseModel, Field, model_validator


class BlockBound(BaseModel):
    """Trailing-monomial lower bound on the algebraic rank over one block."""

    label: str = Field(description="Block label, e.g. X1 or Y.")
    variables: list[str] = Field(
        default_factory=list, description="Block variables by id."
    )
    bound: int = Field(
        ge=0, description="Size of a greedy independent subset of the TMs."
    )
    tm_set: list[str] = Field(
        default_factory=list,
        description="Independent trailing monomials, ascending in the active order.",
    )
    coefficients: int = Field(
        default=0,
        ge=0,
        description="Nonzero coefficient polynomials that were inspected.",
    )
    constant: int = Field(
        default=0,
        ge=0,
        description="Coefficient polynomials skipped because they are constant.",
    )
    mode: Literal["full", "targeted"] = Field(
        default="full",
        description="full: decomposition of an explicit polynomial; targeted: sub-cube queries.",
    )


class MeasureReport(BaseModel):
    """Per-block bounds of a partition and their raw (unscaled) sum."""

    order: str = Field(description="Monomial order, e.g. X>Y.")
    blocks: list[BlockBound] = Field(default_factory=list)
    total: int = Field(ge=0, description="Sum of the per-block bounds.")
    label: str = Field(default="certified lower bound")

    @model_validator(mode="after")
    def _total_is_sum(self) -> "MeasureReport":
        expected = sum(b.bound for b in self.blocks)
        if self.total != expected:
            raise ValueError(
                f"total {self.total!r} differs from the block sum {expected!r}"
            )
        return self


class FunctionFieldRank(BaseModel):
    """Random-evaluation ranks of a PD matrix whose entries live in F(T)."""

    prime: int
    trials: list[int] = Field(default_factory=list, description="Rank per kept trial.")
    discarded: int = Field(
        default=0, ge=0, description="Trials dropped on a vanishing denominator."
    )
    rank: int = Field(
        ge=0, description="Maximum over kept trials; a lower bound over F(T)."
    )


class DegreeExperimentReport(BaseModel):
    """Sampling check that every sub-sum inverse has full degree."""

    n: int
    field: str
    sample_size: int
    trials: int
    failures: int = Field(
        ge=0, description="Trials where some nonempty S' had a short inverse."
    )
    frequency: float
    bound: float = Field(description="2^{2n} / |S|, the failure-probability bound.")
    satisfied: bool


class BalancedFrequencyReport(BaseModel):
    """Hit rate of the unconditioned partition sampler on balanced partitions."""

    n: int
    samples: int
    frequency: float
    expected: float = Field(description="C(n, n/2) / 2^n.")
    stderr: float
    within: bool = Field(
        description="Whether the observed rate is within 3 standard errors."
    )


class ZeroRuleSummary(BaseModel):
    scanned: int
    forced_zero: int
    violations: list[str] = Field(default_factory=list)


class BlockwiseReport(BaseModel):
    """Raw quantities of the blockwise lower-bound pipeline."""

    n: int
    field: str
    mode: Literal["full", "targeted"]
    containment_ok: bool | None = Field(
        default=None,
        description="Every axiom monomial has the closed-form coefficient.",
    )
    zero_rule: ZeroRuleSummary | None = None
    tm_independent: list[bool] = Field(
        default_factory=list,
        description="Per X-block: are the TMs algebraically independent.",
    )
    measure: MeasureReport
    target: float = Field(description="n^2 / log n, the shape of the bound.")


class ConstDegReport(BaseModel):
    """Raw quantities of the set-multilinear lower-bound pipeline."""

    n: int
    c: int
    field: str
    tm_matches_pi: list[bool] = Field(
        default_factory=list, description="Per block: TM set equals the image of pi_k."
    )
    measure: MeasureReport


class PartitionRank(BaseModel):
    y: list[str]
    z: list[str]
    rank: int
    trials: list[int] = Field(default_factory=list)


class HardRankReport(BaseModel):
    """Function-field PD ranks of a hard inverse over balanced partitions of X."""

    family: str
    n: int
    field: str
    prime: int | None = None
    partitions: list[PartitionRank] = Field(default_factory=list)
    min_rank: int
    target: int = Field(description="2^n.")
    satisfied: bool
