"""HTTP service wrapping the retrieval core."""
