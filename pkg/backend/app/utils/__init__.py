from .validators import parse_k_range, validate_density, validate_positive

__all__ = ["parse_k_range", "validate_density", "validate_positive"]
