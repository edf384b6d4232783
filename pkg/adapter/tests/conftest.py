import sys
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

# the primary package's test fixtures provide the shared synthetic corpus
PRIMARY_TESTS = Path(__file__).resolve().parent.parent.parent / "tests"
sys.path.insert(0, str(PRIMARY_TESTS))


@pytest.fixture
def tiny_corpus(tmp_path) -> Path:
    d = tmp_path / "corpus"
    d.mkdir()
    colors = {"alpha": (255, 0, 0), "beta": (0, 128, 255), "gamma": (40, 200, 90)}
    for name, rgb in colors.items():
        arr = np.zeros((16, 16, 3), dtype=np.uint8)
        arr[:, :] = rgb
        Image.fromarray(arr).save(d / f"{name}.png")
    return d
