# regring test suite
