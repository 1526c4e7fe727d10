"""Benchmark problems, file formats, generators, oracles and sweeps.

The runner and report modules import the engine registry and are therefore
imported explicitly (``regatta.bench.runner``, ``regatta.bench.report``).
"""
