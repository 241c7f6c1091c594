"""Faces of maximal chain polytopes."""
