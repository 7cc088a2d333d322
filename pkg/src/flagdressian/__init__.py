"""Valuated flag matroids and flag Dressians with exact arithmetic."""
