import os
from typing import Optional

class Settings:
    # Desk-scale caps
    solver_max_vertices: int = int(os.getenv("PLANAR_SOLVER_MAX_VERTICES", "32"))
    corpus_max_vertices: int = int(os.getenv("PLANAR_CORPUS_MAX_VERTICES", "10"))
    ore_max_vertices: int = int(os.getenv("PLANAR_ORE_MAX_VERTICES", "16"))
    theorem_max_vertices: int = int(os.getenv("PLANAR_THEOREM_MAX_VERTICES", "12"))

    # Worker pool
    jobs: Optional[int] = int(os.getenv("PLANAR_JOBS")) if os.getenv("PLANAR_JOBS") else None

    # Logging
    log_level: str = os.getenv("PLANAR_LOG_LEVEL", "WARNING")

    # Corpus manifest
    corpus_manifest_path: str = os.getenv("PLANAR_CORPUS_MANIFEST", "config/corpus_manifest.yaml")

    # Random instance suites
    random_seed: int = int(os.getenv("PLANAR_RANDOM_SEED", "20240101"))
    random_max_vertices: int = int(os.getenv("PLANAR_RANDOM_MAX_VERTICES", "12"))

    def worker_count(self) -> int:
        if self.jobs and self.jobs > 0:
            return self.jobs
        return os.cpu_count() or 1

settings = Settings()
