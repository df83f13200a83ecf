# Tests for the layered graph solver
