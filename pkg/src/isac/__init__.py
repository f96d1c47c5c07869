"""Coverage and rate analysis for integrated sensing-and-communication networks.

Two engines evaluate the same metrics: :mod:`isac.analytic` by numerical
integration of closed-form stochastic-geometry expressions, and
:mod:`isac.montecarlo` by simulating Poisson network snapshots.
"""
from .model import BeamPattern, NetworkParams, QamOrder, from_paper_defaults

__all__ = ["BeamPattern", "NetworkParams", "QamOrder", "from_paper_defaults"]
__version__ = "0.1.0"
