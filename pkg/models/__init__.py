"""
Modelos del Sistema NatDist
"""
from .machine import Move, TmAction, TmProgram, TmConfiguration, EcaRule, EcaRow
from .experiment import (
    ModelKind,
    ModelSpec,
    ExperimentSpec,
    ExtractionPolicy,
    StopRule,
    SampleSchedule,
)
from .distribution import Distribution, DistributionMeta, RankedString, ComplexityClass
from .report import (
    Tail,
    PermutationMode,
    Method,
    Verdict,
    RankVector,
    SignificanceResult,
    CorrelationRow,
    CorrelationReport,
    MonotonyVerdict,
    NaturalnessLabel,
    NaturalnessEvidence,
    NaturalnessVerdict,
    DistributionSequence,
    ConvergenceStep,
)
from .run import RunConfig, RunRecord, get_now

__all__ = [
    "Move", "TmAction", "TmProgram", "TmConfiguration", "EcaRule", "EcaRow",
    "ModelKind", "ModelSpec", "ExperimentSpec", "ExtractionPolicy", "StopRule",
    "SampleSchedule",
    "Distribution", "DistributionMeta", "RankedString", "ComplexityClass",
    "Tail", "PermutationMode", "Method", "Verdict", "RankVector", "SignificanceResult",
    "CorrelationRow", "CorrelationReport", "MonotonyVerdict", "NaturalnessLabel",
    "NaturalnessEvidence", "NaturalnessVerdict", "DistributionSequence",
    "ConvergenceStep",
    "RunConfig", "RunRecord", "get_now",
]
