from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Oracle guards
    MAX_ENUMERATION: int = 1_000_000
    MAX_BRUTE_FORCE_VARIABLES: int = 8

    # Search
    SEARCH_NODE_LIMIT: int = 1_000_000

    # Edit distance penalties for soft_regular[edit]
    DEFAULT_SUBSTITUTION_COST: int = 1
    DEFAULT_INSERTION_COST: int = 1
    DEFAULT_DELETION_COST: int = 1

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    # Paths
    DATA_DIR: str = "data"
    INSTANCE_DIR: str = "data/instances"

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "ignore"


# Global settings instance
settings = Settings()
