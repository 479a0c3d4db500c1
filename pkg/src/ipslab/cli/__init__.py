"""Command-line front-end and end-to-end pipelines."""
