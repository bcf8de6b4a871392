# rauzykit test suite
