"""Tests of the finger selection simulator."""
