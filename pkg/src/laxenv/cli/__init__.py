"""Command-line driver: spec files, checks, lemma suites and reports."""
