# services/database.py

"""SQLite ledger for benchmark runs (bench --record PATH)."""

import logging
from datetime import datetime, timezone

from sqlalchemy import BigInteger, Boolean, Column, DateTime, ForeignKey, Integer, String, create_engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

logger = logging.getLogger(__name__)

Base = declarative_base()


# ==================== DATABASE TABLES ====================

class BenchRun(Base):
    __tablename__ = "bench_runs"
    id = Column(Integer, primary_key=True, autoincrement=True)
    suite = Column(String(20), nullable=False)
    started_at = Column(DateTime, nullable=False)
    ended_at = Column(DateTime, nullable=True)
    rows_recorded = Column(Integer, default=0)
    success = Column(Boolean, default=False)
    error_message = Column(String, nullable=True)


class BenchSample(Base):
    __tablename__ = "bench_samples"
    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey("bench_runs.id"), nullable=False)
    suite = Column(String(20), nullable=False)
    param1 = Column(BigInteger, nullable=False)
    param2 = Column(BigInteger, nullable=False)
    engine = Column(String(40), nullable=False)
    ops = Column(BigInteger, nullable=False)
    nanos = Column(BigInteger, nullable=False)


# ==================== HELPER FUNCTIONS ====================

def make_engine(path: str):
    url = "sqlite://" if path == ":memory:" else f"sqlite:///{path}"
    return create_engine(url, echo=False)


def init_db(engine):
    """Create all tables"""
    Base.metadata.create_all(bind=engine)
    logger.debug("✓ Ledger tables ready")


def session_factory(engine):
    return sessionmaker(autocommit=False, autoflush=False, bind=engine)


class BenchLedger:
    """
    Run tracking for benchmark sweeps: one BenchRun per invocation and one
    BenchSample per emitted CSV row
    """

    def __init__(self, db: Session):
        self.db = db
        self.run_id = None

    def start_run(self, suite: str) -> int:
        run = BenchRun(suite=suite, started_at=datetime.now(timezone.utc), success=False)
        self.db.add(run)
        self.db.commit()
        self.run_id = run.id
        logger.info(f"🚀 Started bench run #{self.run_id} ({suite})")
        return self.run_id

    def record(self, rows) -> int:
        """Store rows of (suite, param1, param2, engine, ops, nanos)"""
        count = 0
        for suite, param1, param2, engine, ops, nanos in rows:
            self.db.add(BenchSample(
                run_id=self.run_id,
                suite=suite,
                param1=int(param1),
                param2=int(param2),
                engine=engine,
                ops=int(ops),
                nanos=int(nanos),
            ))
            count += 1
        self.db.commit()
        return count

    def end_run(self, rows_recorded: int, success: bool, error_message: str = None):
        if not self.run_id:
            return
        run = self.db.query(BenchRun).filter_by(id=self.run_id).first()
        if run:
            run.ended_at = datetime.now(timezone.utc)
            run.rows_recorded = rows_recorded
            run.success = success
            run.error_message = error_message
            self.db.commit()
            status = "✅ SUCCESS" if success else "❌ FAILED"
            logger.info(f"{status} bench run #{self.run_id}: {rows_recorded} rows")


if __name__ == "__main__":
    engine = make_engine(":memory:")
    init_db(engine)
    print("✓ Ledger tables:", ", ".join(sorted(Base.metadata.tables)))
