"""Word-class dominance and readability analysis of scientific abstracts."""

__version__ = "0.3.0"
