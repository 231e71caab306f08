# CLI command modules