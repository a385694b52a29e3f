# src/models/__init__.py
# This file serves as the central registry for all models.
# The ORM rows must be imported here so Base.metadata knows their tables.
from .stage_entry import StageEntry
from .audit_log import AuditLog

from .ordinal import Comparison, Ordinal, parse_ordinal
from .point import Point
from .clopen import ClopenCode
from .borel_code import BorelCode, CodeGraph, GraphNode, Kind
from .eval_outcome import EvalOutcome, UnknownReason, Verdict
from .fin_structure import FinStructure
from .formula import Formula
from .fin_graph import FinGraph
from .fin_partition import FinPartition, MonotoneMap
