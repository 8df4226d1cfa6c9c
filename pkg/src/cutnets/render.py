"""Decision-boundary rasterization to binary PPM (P6) images.

Pixels sample the class bit at their grid-cell centers; row 0 sits at the
box's maximum-y edge, image style.  Class 1 renders gray, class 0 white; a
two-evaluator diff paints disagreeing pixels red.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .geometry import Box

__all__ = ["DecisionMap", "rasterize", "render_decision_map"]

GRAY = (128, 128, 128)
WHITE = (255, 255, 255)
RED = (255, 0, 0)

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class DecisionMap:
    """Per-pixel class bits for one or two evaluators over a box.

    ``layers`` has shape (evaluator_count, height, width); pixel (i, j) holds
    the bit at the center of grid cell (i, j), with row 0 at maximum y.
    """

    width: int
    height: int
    box: Box
    layers: np.ndarray

    def __post_init__(self):
        layers = np.asarray(self.layers, dtype=np.int8)
        if layers.ndim != 3 or layers.shape[0] not in (1, 2):
            raise ValueError("layers must be (1 or 2, height, width)")
        if layers.shape[1:] != (self.height, self.width):
            raise ValueError("layer shape must match height and width")
        layers.setflags(write=False)
        object.__setattr__(self, "layers", layers)

    def pixel_center(self, row: int, col: int) -> tuple[float, float]:
        """Input-space coordinates at the center of pixel (row, col)."""
        (x0, y0), (x1, y1) = self.box.lower, self.box.upper
        return (
            x0 + (col + 0.5) * (x1 - x0) / self.width,
            y1 - (row + 0.5) * (y1 - y0) / self.height,
        )

    def to_ppm(self) -> bytes:
        """Binary PPM: gray for class 1, white for class 0, red where two
        layers disagree."""
        h, w = self.height, self.width
        rgb = np.empty((h, w, 3), dtype=np.uint8)
        rgb[self.layers[0] == 1] = GRAY
        rgb[self.layers[0] == 0] = WHITE
        if len(self.layers) == 2:
            rgb[self.layers[0] != self.layers[1]] = RED
        return b"P6\n%d %d\n255\n" % (w, h) + rgb.tobytes()


def rasterize(
    evaluators: Evaluator | Sequence[Evaluator],
    box: Box,
    width: int,
    height: int,
) -> DecisionMap:
    """Sample one or two evaluators over the pixel-center grid of ``box``."""
    if callable(evaluators):
        evaluators = [evaluators]
    evaluators = list(evaluators)
    if not 1 <= len(evaluators) <= 2:
        raise ValueError("rasterize takes one evaluator or a pair to diff")
    if width < 1 or height < 1:
        raise ValueError("image dimensions must be at least 1x1")
    if box.dimension != 2 or box.is_degenerate:
        raise ValueError("the view box must be a nondegenerate 2-D box")
    (x0, y0), (x1, y1) = box.lower, box.upper
    xs = x0 + (np.arange(width) + 0.5) * (x1 - x0) / width
    ys = y1 - (np.arange(height) + 0.5) * (y1 - y0) / height
    grid_x, grid_y = np.meshgrid(xs, ys)  # row-major, row 0 at max y
    points = np.stack([grid_x.ravel(), grid_y.ravel()], axis=1)
    layers = np.stack(
        [
            np.asarray(ev(points), dtype=np.int8).reshape(height, width)
            for ev in evaluators
        ]
    )
    return DecisionMap(width=width, height=height, box=box, layers=layers)


def render_decision_map(
    evaluators: Evaluator | Sequence[Evaluator],
    box: Box,
    width: int,
    height: int,
) -> bytes:
    """Rasterize and encode in one step."""
    return rasterize(evaluators, box, width, height).to_ppm()
