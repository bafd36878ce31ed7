"""Repository contracts."""
