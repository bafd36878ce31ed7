"""Report emitters."""
