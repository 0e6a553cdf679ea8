import numpy as np
import pytest

from admire.histogram import round_half_up


def block_mean(img, f=2):
    h, w = img.shape[0] // f * f, img.shape[1] // f * f
    blocks = img[:h, :w].reshape(h // f, f, w // f, f).astype(np.float64)
    return round_half_up(blocks.mean(axis=(1, 3))).astype(np.uint8)


def load_test_images():
    """The two bundled grayscale standard photographs, 256 x 256."""
    from skimage import data

    return {
        "camera": block_mean(data.camera()),
        "moon": block_mean(data.moon()),
    }


@pytest.fixture(scope="session")
def test_images():
    return load_test_images()


@pytest.fixture(scope="session")
def camera(test_images):
    return test_images["camera"]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, title, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
