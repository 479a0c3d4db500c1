"""Pydantic models for every JSON surface the command line reads or writes."""

from ipslab.schemas.certificate import (
    CertificateModel,
    ElemSymStructure,
    FunctionalCheckReport,
    VerificationReport,
)
from ipslab.schemas.experiment import ExperimentConfig
from ipslab.schemas.polynomial import (
    InstanceDescriptorModel,
    PolynomialModel,
    TermModel,
)
from ipslab.schemas.reports import (
    BalancedFrequencyReport,
    BlockBound,
    BlockwiseReport,
    ConstDegReport,
    DegreeExperimentReport,
    FunctionFieldRank,
    HardRankReport,
    MeasureReport,
    PartitionRank,
    ZeroRuleSummary,
)
from ipslab.schemas.roabp import (
    LayerModel,
    RoabpModel,
    SumRoabpModel,
    WeaknessPipelineReport,
    WeaknessReport,
    WeaknessTrial,
)

__all__ = [
    "BalancedFrequencyReport",
    "BlockBound",
    "BlockwiseReport",
    "CertificateModel",
    "ConstDegReport",
    "DegreeExperimentReport",
    "ElemSymStructure",
    "ExperimentConfig",
    "FunctionFieldRank",
    "FunctionalCheckReport",
    "HardRankReport",
    "InstanceDescriptorModel",
    "LayerModel",
    "MeasureReport",
    "PartitionRank",
    "PolynomialModel",
    "RoabpModel",
    "SumRoabpModel",
    "TermModel",
    "VerificationReport",
    "WeaknessPipelineReport",
    "WeaknessReport",
    "WeaknessTrial",
    "ZeroRuleSummary",
]
