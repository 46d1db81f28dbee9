"""Exact DT / GV / Gromov-Witten computations for banana Calabi-Yau threefolds."""

__version__ = "0.1.0"
