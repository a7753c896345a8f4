"""sumset-lab: exact arithmetic and desk-scale experiments for polynomial sumset configurations in Q."""

__version__ = "0.1.0"
