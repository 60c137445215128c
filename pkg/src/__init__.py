"""ctqw - Continuous-time random walks on graphs and their two-spin NMR emulation."""

__version__ = "0.1.0"
