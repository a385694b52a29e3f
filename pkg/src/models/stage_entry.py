# src/models/stage_entry.py
from sqlalchemy import Column, Integer, String, DateTime, UniqueConstraint
from sqlalchemy.sql import func
from src.utils.database import Base

class StageEntry(Base):
    """One registered object and its permanent (stage, index) pair."""
    __tablename__ = 'stage_entries'
    __table_args__ = (UniqueConstraint('stage', 'stage_index', name='uq_stage_index'),)
    id = Column(Integer, primary_key=True, index=True)
    object_id = Column(String, unique=True, nullable=False)
    stage = Column(Integer, nullable=False)
    index = Column('stage_index', Integer, nullable=False)
    created_at = Column(DateTime(timezone=True), server_default=func.now())

    def pair(self):
        return (self.stage, self.index)
