"""Package under construction; full API exports restored at the end of the build."""
__version__ = "0.1.0"
