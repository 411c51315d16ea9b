"""Moduły wizualizacji."""
from visualization.error_curves import create_error_plot, create_rate_plot
