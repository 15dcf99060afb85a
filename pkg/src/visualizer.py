import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


class CodeVisualizer:
    def __init__(self, width=9, height=5, dpi=150):
        self.figsize = (width, height)
        self.dpi = dpi

        # Colors
        self.colors = {
            'actual': (0.39, 0.59, 0.78),
            'predicted': (1.0, 0.65, 0.0),
            'support': (0.20, 0.55, 0.30),
            'zero': (0.75, 0.75, 0.75),
        }

    def _prepare(self, output_path):
        folder = os.path.dirname(str(output_path))
        if folder:
            os.makedirs(folder, exist_ok=True)

    def plot_weight_distribution(self, actual, predicted=None, output_path="weights.png", title=""):
        """Bars of A_w for the enumerated code, optionally next to the predicted ones.

        actual and predicted map weight -> count; the zero weight is skipped.
        """
        self._prepare(output_path)
        weights = sorted({w for w in actual if w} | {w for w in (predicted or {}) if w})
        positions = np.arange(len(weights))
        bar = 0.4 if predicted else 0.8

        fig, ax = plt.subplots(figsize=self.figsize)
        ax.bar(positions - (bar / 2 if predicted else 0), [actual.get(w, 0) for w in weights],
               width=bar, color=self.colors['actual'], label='enumerated')
        if predicted:
            ax.bar(positions + bar / 2, [predicted.get(w, 0) for w in weights],
                   width=bar, color=self.colors['predicted'], label='predicted')
        ax.set_xticks(positions)
        ax.set_xticklabels([str(w) for w in weights], rotation=45)
        ax.set_yscale('log')
        ax.set_xlabel('weight')
        ax.set_ylabel('codewords')
        ax.set_title(title or 'Weight distribution')
        ax.legend()
        fig.tight_layout()
        fig.savefig(output_path, dpi=self.dpi, bbox_inches="tight")
        plt.close(fig)
        return str(Path(output_path))

    def plot_spectrum(self, profile, output_path="spectrum.png", title=""):
        """Squared Walsh norms per alpha, coloured by the dual value on the support."""
        self._prepare(output_path)
        norms = profile.walsh.norms
        alphas = np.arange(len(norms))

        fig, (top, bottom) = plt.subplots(2, 1, figsize=self.figsize, sharex=True)
        on_support = norms != 0
        top.scatter(alphas[~on_support], norms[~on_support], s=6, color=self.colors['zero'])
        top.scatter(alphas[on_support], norms[on_support], s=6, color=self.colors['support'])
        top.set_ylabel('|W(a)|^2')
        top.set_title(title or f'Walsh spectrum ({profile.sign_pattern}, k={profile.k})')

        if profile.dual_table is not None:
            bottom.scatter(alphas[on_support], profile.dual_table[on_support], s=6, color=self.colors['support'])
            bottom.set_yticks([0, 1, 2])
        bottom.set_xlabel('alpha (enumeration index)')
        bottom.set_ylabel('dual value')
        fig.tight_layout()
        fig.savefig(output_path, dpi=self.dpi, bbox_inches="tight")
        plt.close(fig)
        return str(Path(output_path))
