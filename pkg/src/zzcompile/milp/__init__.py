"""Compact mixed-integer model: construction, text interchange, evaluation, solution ingestion."""

from .evaluate import EvalReport, evaluate
from .lemma import binary_form_holds, binary_form_rhs, sign_form_holds
from .lpformat import emit_model, format_number, parse_lp, parse_sidecar
from .model import DEFAULT_M, FIRSTDIFF_MIN_N, MipConstraint, MipModel, MipVariable, build_cmipgc, model_size, sound_big_m
from .warmstart import WarmStart, assignment_from_decomposition, emit_warmstart, ingest_solution, parse_solution

__all__ = [
    "EvalReport", "evaluate",
    "binary_form_holds", "binary_form_rhs", "sign_form_holds",
    "emit_model", "format_number", "parse_lp", "parse_sidecar",
    "DEFAULT_M", "FIRSTDIFF_MIN_N", "MipConstraint", "MipModel", "MipVariable", "build_cmipgc", "model_size", "sound_big_m",
    "WarmStart", "assignment_from_decomposition", "emit_warmstart", "ingest_solution", "parse_solution",
]
