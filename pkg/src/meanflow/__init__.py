"""Exact solver for preemptive equal-length scheduling with release times."""
