"""Static SVG renderings of the figure data (matplotlib, Agg backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# fixed metadata keeps the SVG bytes reproducible
_SVG_META = {"Date": None, "Creator": "swmimo"}


def _save(fig, path):
    plt.rcParams["svg.hashsalt"] = "swmimo"
    fig.savefig(path, format="svg", metadata=_SVG_META)
    plt.close(fig)


def plot_snr(freqs, table, path, label=""):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(freqs / 1e9, np.median(table, axis=0), label=f"median {label}")
    ax.fill_between(freqs / 1e9, np.percentile(table, 10, axis=0), np.percentile(table, 90, axis=0), alpha=0.3)
    ax.set_xlabel("frequency (GHz)")
    ax.set_ylabel("SNR (dB)")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    _save(fig, path)


def plot_cdfs(curves, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, (x, p) in curves.items():
        ax.step(10 * np.log10(x), p, where="post", label=label)
    ax.set_xlabel("received scattered power (dB)")
    ax.set_ylabel("CDF")
    ax.legend()
    _save(fig, path)


def plot_profiles(profiles, path):
    fig, axes = plt.subplots(1, 2, figsize=(9, 4), sharey=True)
    for (reg, end), prof in profiles.items():
        ax = axes[0 if end == "rx" else 1]
        ax.plot(np.arange(1, prof.size + 1), prof, marker=".", label=reg)
        ax.set_title(f"{end} steering vector")
        ax.set_xlabel("rank")
    axes[0].set_ylabel("normalized magnitude")
    axes[0].legend()
    _save(fig, path)


def plot_corr_rows(curves, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    for (reg, label), row in curves.items():
        ax.plot(np.arange(1, row.size + 1), row, label=f"{reg} {label}")
    ax.set_xlabel("element index")
    ax.set_ylabel("|correlation with element 1|")
    ax.legend()
    _save(fig, path)
