"""Use cases running the verification suites."""
