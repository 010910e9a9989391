"""Shipped JSON schemas describing the CLI output contract."""

from importlib import resources


def output_record_schema_path() -> str:
    """Filesystem path of the JSON schema every --format=json record obeys."""
    return str(resources.files(__package__) / "output_record.schema.json")


_schema_path = output_record_schema_path
