"""
Shared logging, error handling and configuration loading.
"""
