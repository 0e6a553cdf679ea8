"""Standard gray test images shared by the demo scripts (needs scikit-image)."""

import numpy as np
from skimage import data

from admire.histogram import round_half_up


def half(img):
    h, w = img.shape[0] // 2 * 2, img.shape[1] // 2 * 2
    blocks = img[:h, :w].reshape(h // 2, 2, w // 2, 2).astype(float)
    return round_half_up(blocks.mean(axis=(1, 3))).astype(np.uint8)


def camera():
    return half(data.camera())


def moon():
    return half(data.moon())
