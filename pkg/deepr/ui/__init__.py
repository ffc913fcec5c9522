"""Console output and value rendering."""
