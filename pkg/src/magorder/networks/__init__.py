"""Bundled benchmark network structures in the edge-list format."""
