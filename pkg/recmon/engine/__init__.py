"""Monitor engine package: dynamics, verdicts, analysis and instrumentation."""
