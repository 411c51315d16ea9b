"""Wykresy błędów modeli względem GN i temp zbieżności po eps."""

import numpy as np
import pandas as pd
import plotly.graph_objects as go

from core.models import ErrorSeries, RateFit

MODEL_COLORS = {
    "iB": "#9467bd",
    "KdV": "#1f77b4",
    "eKdV": "#17becf",
    "mKdV": "#8c564b",
    "CL": "#28a745",
    "weakly-coupled": "#ff7f0e",
    "unidirectional": "#dc3545",
    "ztov": "#dc3545",
}


def create_error_plot(
    series: ErrorSeries,
    norm: str = "L2",
    title: str | None = None,
) -> go.Figure:
    """
    Błąd łączny w funkcji czasu dla każdego modelu (oś y logarytmiczna).

    Args:
        series: Seria błędów z run_comparison lub run_ztov_probe
        norm: "L2" lub "H1"
        title: Tytuł wykresu

    Returns:
        Plotly Figure
    """
    fig = go.Figure()
    for model in series.models:
        values = np.asarray(series.errors[model][norm])
        if not np.any(values > 0.0):
            continue  # referencja GN
        fig.add_trace(
            go.Scatter(
                x=series.times[:len(values)],
                y=values,
                mode="lines",
                name=model,
                line=dict(color=MODEL_COLORS.get(model), width=2),
                hovertemplate=f"<b>{model}</b><br>t = %{{x:.3g}}<br>błąd = %{{y:.3e}}<extra></extra>",
            )
        )
    for tag, index in series.checkpoint_tags.items():
        fig.add_vline(x=float(series.times[index]), line=dict(color="gray", dash="dot"), annotation_text=tag)

    eps = series.metadata.get("epsilon")
    fig.update_layout(
        title=dict(text=title or f"Błąd {norm} względem GN (eps = {eps})", x=0.5),
        xaxis=dict(title="t"),
        yaxis=dict(title=f"błąd {norm}", type="log", exponentformat="e"),
        template="plotly_white",
        height=500,
        width=800,
    )
    return fig


def create_rate_plot(df: pd.DataFrame, rates: dict[tuple[str, str], RateFit], norm: str = "L2") -> go.Figure:
    """
    Błąd w punktach kontrolnych względem eps w skali log-log z dopasowanymi prostymi.

    Args:
        df: Tabela przeglądu (kolumny epsilon, model, checkpoint_tag, error_*)
        rates: Dopasowania z rates_from_frame
        norm: "L2" lub "H1"
    """
    fig = go.Figure()
    for (model, tag), group in df.groupby(["model", "checkpoint_tag"], sort=True):
        fit = rates.get((model, tag))
        if fit is None:
            continue
        label = f"{model} @ {tag} (nachylenie {fit.slope:.2f})"
        fig.add_trace(
            go.Scatter(
                x=group["epsilon"],
                y=group[f"error_{norm}"],
                mode="markers",
                name=label,
                marker=dict(color=MODEL_COLORS.get(model), size=8),
            )
        )
        eps = np.sort(group["epsilon"].to_numpy(dtype=float))
        fig.add_trace(
            go.Scatter(
                x=eps,
                y=np.exp(fit.intercept) * eps ** fit.slope,
                mode="lines",
                showlegend=False,
                line=dict(color=MODEL_COLORS.get(model), dash="dash"),
            )
        )
    fig.update_layout(
        title=dict(text=f"Tempa zbieżności ({norm})", x=0.5),
        xaxis=dict(title="eps", type="log"),
        yaxis=dict(title=f"błąd {norm}", type="log", exponentformat="e"),
        template="plotly_white",
        height=500,
        width=800,
    )
    return fig
