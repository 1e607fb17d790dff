"""Experiment documents, Monte Carlo sweeps, result tables and the oracle check."""
