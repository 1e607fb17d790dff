"""Finger selection algorithms for MMSE selective-Rake receivers.

Each algorithm receives the signature of one realization together with the
scenario constants and returns an assignment of exactly M of the L paths to
the Rake fingers. The quality of an assignment is the overall SINR of the MMSE
combiner, evaluated by finger_selection.system.sinr.overall_sinr.
"""
