"""Lexing, parsing and deparsing of R source."""
