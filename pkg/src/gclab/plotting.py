"""Heatmaps of integer tables (Cayley tables, cocycle values) via matplotlib."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def heatmap(array, path, title="", rows=None, cols=None):
    n_rows, n_cols = array.shape
    size = max(3.0, min(12.0, 0.35 * max(n_rows, n_cols) + 2))
    fig, ax = plt.subplots(figsize=(size, size))
    im = ax.imshow(array, cmap="viridis", interpolation="nearest")
    ax.set_title(title)
    if n_rows <= 32 and n_cols <= 32:
        ax.set_xticks(range(n_cols))
        ax.set_yticks(range(n_rows))
        ax.set_xticklabels([str(c) for c in (cols or range(n_cols))], rotation=90, fontsize=7)
        ax.set_yticklabels([str(r) for r in (rows or range(n_rows))], fontsize=7)
        if n_rows * n_cols <= 256:
            for i in range(n_rows):
                for j in range(n_cols):
                    ax.text(j, i, str(int(array[i, j])), ha="center", va="center",
                            color="w", fontsize=7)
    fig.colorbar(im, ax=ax, fraction=0.046)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
