"""Value model, vector engine, environments and the evaluator."""
