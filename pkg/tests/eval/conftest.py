import numpy as np
import pytest

from pmivec.eval import WordVectors


@pytest.fixture
def analogy_vectors():
    """Vectors where man:king::woman:queen and paris:france::rome:italy hold exactly."""
    rng = np.random.default_rng(0)
    base = {w: rng.normal(size=6) for w in ("man", "woman", "royal", "paris", "rome", "country", "noise")}
    table = dict(base)
    table["king"] = base["man"] + base["royal"]
    table["queen"] = base["woman"] + base["royal"]
    table["france"] = base["paris"] + base["country"]
    table["italy"] = base["rome"] + base["country"]
    words = tuple(table)
    return WordVectors(words=words, matrix=np.stack([table[w] for w in words]))


@pytest.fixture
def analogy_file(tmp_path):
    path = tmp_path / "questions-words.txt"
    path.write_text(
        ": capital-common-countries\n"
        "paris france rome italy\n"
        "rome italy paris france\n"
        ": gram-gender\n"
        "man king woman queen\n"
        "woman queen man king\n"
        "man king woman unicorn\n",
        encoding="utf-8",
    )
    return path
