"""Single source of the package version for reports and the CLI."""

VERSION = "0.1.0"
