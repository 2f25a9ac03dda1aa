"""Shared infrastructure: settings, logging, records and task dispatch."""
