"""Domain layer: models, services and repository contracts."""
