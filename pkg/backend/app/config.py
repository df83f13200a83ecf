from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="LAYERED_", env_file=".env", extra="ignore")

    # Oracle - brute force refuses anything larger
    oracle_max_vertices: int = 24

    # Solvers
    default_mode: str = "paper"
    dp_fast_transfer: bool = True
    assert_state_bounds: bool = True

    # Benchmark defaults
    bench_intra_density: float = 0.5
    bench_inter_density: float = 0.5
    bench_repeats: int = 3

    # Application
    api_title: str = "Layered Graph Solver"
    api_version: str = "1.0.0"
    log_level: str = "WARNING"


settings = Settings()
