"""deepr - an interpreter, REPL and conformance harness for a subset of R."""
import logging

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
