from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    SERVICE_NAME: str = "carpet-recur"
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = False

    # covering-count enumeration budgets
    CARPET_RECUR_BUDGET: int = 1_000_000        # cylinders w in A^n
    CARPET_RECUR_TEST_BUDGET: int = 10_000_000  # digit-search node visits

    MPMATH_DPS: int = 60

    # sampler
    SCHEDULE_FIRST: int = 6
    GROWTH_MARGIN: int = 2
    SAMPLE_BLOCK_SIZE: int = 1024

    # simplex maximizer
    OPT_RESTARTS: int = 8
    OPT_MAX_ITER: int = 4000
    OPT_GRID_MAX_ALPHABET: int = 6
    OPT_GRID_RESOLUTION: int = 12

    TABLE_TAIL_FRACTION: float = 0.5
    DEFAULT_THREADS: int = 1

    class Config:
        env_file = ".env"
        extra = "ignore"


settings = Settings()
