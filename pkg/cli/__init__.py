"""
Command-line driver: experiment configs, experiment runner, phase sweeps and verbs.
"""
