"""Filesystem repositories."""
