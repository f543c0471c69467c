"""Independent slow-path reference computations for the test suite."""
