from .solve import router as solver_router

__all__ = ["solver_router"]
