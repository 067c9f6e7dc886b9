"""HTTP service layer: shared handlers, pydantic models, FastAPI app."""
