"""Command-line front end: expression parser, configuration, suites and reports."""
