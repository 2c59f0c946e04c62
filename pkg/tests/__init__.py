"""
Test suite for the dagger-trace package.
"""
