"""Rdzeń symulacji fal wewnętrznych i porównań z układem GN."""
