# src/utils/stage_registry.py
import logging
import threading
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

from sqlalchemy.exc import IntegrityError

from src.models import AuditLog, StageEntry
from src.utils.constants import REGISTRY_DATABASE_URL
from src.utils.database import make_session
from src.utils.errors import WorkbenchError
from src.utils.helpers import log_action

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class RegistryCollision(WorkbenchError):
    pass


class Unregistered(WorkbenchError):
    pass


class StageRegistry:
    """Hands out permanent (stage, index) pairs, lexicographically well-ordered.

    Pairs never change once assigned and no pair is given out twice; the
    database enforces both, the in-memory cache only serves lookups.
    """

    def __init__(self, url=REGISTRY_DATABASE_URL):
        self.session = make_session(url)
        self.stage = 0
        self._lock = threading.Lock()
        self._cache: Dict[str, Pair] = {}
        self._next_index: Dict[int, int] = defaultdict(int)

    def register(self, object_id: str, stage: Optional[int] = None) -> Pair:
        """Give ``object_id`` the next free index at ``stage`` (the current stage by default)."""
        with self._lock:
            stage = self.stage if stage is None else stage
            return self._insert(object_id, stage, self._next_index[stage])

    def assign(self, object_id: str, stage: int, index: int) -> Pair:
        with self._lock:
            return self._insert(object_id, stage, index)

    def _insert(self, object_id, stage, index):
        if stage < 0 or index < 0:
            raise ValueError(f"stage and index must be natural numbers, got ({stage}, {index})")
        if object_id in self._cache:
            raise RegistryCollision(f"object {object_id!r} already holds {self._cache[object_id]}")
        self.session.add(StageEntry(object_id=object_id, stage=stage, index=index))
        log_action(self.session, "ASSIGN", "Object", object_id,
                   f"Object '{object_id}' assigned ({stage}, {index}).")
        try:
            self.session.commit()
        except IntegrityError:
            self.session.rollback()
            raise RegistryCollision(f"pair ({stage}, {index}) is already taken") from None
        self._cache[object_id] = (stage, index)
        self._next_index[stage] = max(self._next_index[stage], index + 1)
        logger.debug("registered %s at (%d, %d)", object_id, stage, index)
        return stage, index

    def advance_stage(self) -> int:
        with self._lock:
            self.stage += 1
            log_action(self.session, "ADVANCE", "Stage", self.stage, f"Advanced to stage {self.stage}.")
            self.session.commit()
            return self.stage

    def note(self, action: str, entity_type: str, entity_id, details: str):
        """Record a domain event next to the assignments."""
        with self._lock:
            log_action(self.session, action, entity_type, entity_id, details)
            self.session.commit()

    def lookup(self, object_id: str) -> Pair:
        try:
            return self._cache[object_id]
        except KeyError:
            raise Unregistered(f"object {object_id!r} was never registered") from None

    def __contains__(self, object_id):
        return object_id in self._cache

    def sort_key(self, object_id: str) -> Pair:
        return self.lookup(object_id)

    def entries(self) -> List[Tuple[str, int, int]]:
        rows = self.session.query(StageEntry).order_by(StageEntry.stage, StageEntry.index).all()
        return [(row.object_id, row.stage, row.index) for row in rows]

    def audit_trail(self) -> List[Tuple[str, str]]:
        rows = self.session.query(AuditLog).order_by(AuditLog.id).all()
        return [(row.action, row.details) for row in rows]

    def close(self):
        self.session.close()
