"""PPM (P6) rasters and SVG scatter plots of point clouds. No image libraries."""

from __future__ import annotations

import numpy as np


def default_view(points: np.ndarray, margin: float = 0.05) -> tuple[float, float, float, float]:
    x, y = points.real, points.imag
    xmin, xmax, ymin, ymax = x.min(), x.max(), y.min(), y.max()
    w = max(xmax - xmin, 1e-9)
    h = max(ymax - ymin, 1e-9)
    # real clouds get a thin band so they stay visible
    if ymax - ymin < 1e-9:
        h = 0.1 * w
        ymin, ymax = -h / 2, h / 2
    return (float(xmin - margin * w), float(xmax + margin * w),
            float(ymin - margin * h), float(ymax + margin * h))


def pixels(points: np.ndarray, view, px) -> np.ndarray:
    """Boolean W x H occupancy mask, row 0 at the top (largest imaginary part)."""
    xmin, xmax, ymin, ymax = view
    w, h = px
    pts = np.asarray(points, dtype=np.complex128)
    i = np.floor((pts.real - xmin) / (xmax - xmin) * w).astype(np.int64)
    j = np.floor((ymax - pts.imag) / (ymax - ymin) * h).astype(np.int64)
    keep = (i >= 0) & (i < w) & (j >= 0) & (j < h)
    mask = np.zeros((h, w), dtype=bool)
    mask[j[keep], i[keep]] = True
    if abs(pts.imag).max(initial=0) == 0 and 0 <= (ymax / (ymax - ymin)) * h < h:
        # real clouds: draw each hit as a short vertical tick
        row = int((ymax / (ymax - ymin)) * h)
        cols = i[(i >= 0) & (i < w)]
        for dr in range(-max(1, h // 8), max(1, h // 8) + 1):
            r = row + dr
            if 0 <= r < h:
                mask[r, cols] = True
    return mask


def ppm_bytes(mask: np.ndarray) -> bytes:
    h, w = mask.shape
    rgb = np.where(mask[..., None], np.uint8(0), np.uint8(255)).repeat(3, axis=2)
    return f"P6\n{w} {h}\n255\n".encode("ascii") + rgb.astype(np.uint8).tobytes()


def escape_ppm(counts: np.ndarray, max_iter: int) -> bytes:
    """Grey-level escape-time raster (count 0 = bounded = black; slow escape is dark)."""
    c = np.asarray(counts, dtype=float)
    g = np.where(c == 0, 0.0, 255 * np.sqrt(np.clip(c, 1, max_iter) / max_iter))
    mask_rgb = g.astype(np.uint8)[..., None].repeat(3, axis=2)
    h, w = counts.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + mask_rgb.tobytes()


def svg_text(points: np.ndarray, view, px, radius: float = 0.6) -> str:
    xmin, xmax, ymin, ymax = view
    w, h = px
    pts = np.asarray(points, dtype=np.complex128)
    sx = (pts.real - xmin) / (xmax - xmin) * w
    sy = (ymax - pts.imag) / (ymax - ymin) * h
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
             f'viewBox="0 0 {w} {h}">',
             f'<rect width="{w}" height="{h}" fill="white"/>',
             '<g fill="black">']
    lines += [f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{radius}"/>' for x, y in zip(sx, sy)]
    lines += ["</g>", "</svg>", ""]
    return "\n".join(lines)
