# src/utils/database.py
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker, declarative_base
from sqlalchemy.pool import StaticPool

from src.utils.constants import REGISTRY_DATABASE_URL

# Every registry opens its own database; in-memory by default.

# Create the Base class that all models will inherit from
Base = declarative_base()


def make_engine(url=REGISTRY_DATABASE_URL):
    if url in ("sqlite://", "sqlite:///:memory:"):
        # one shared connection, otherwise each checkout sees an empty database
        return create_engine(url, connect_args={"check_same_thread": False}, poolclass=StaticPool)
    return create_engine(url)


def make_session(url=REGISTRY_DATABASE_URL):
    """Creates all tables on a fresh engine and returns a session bound to it."""
    # The 'Base' object knows about all tables thanks to the imports in src/models/__init__.py
    import src.models  # noqa: F401
    engine = make_engine(url)
    Base.metadata.create_all(bind=engine)
    SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    return SessionLocal()
