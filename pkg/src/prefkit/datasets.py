"""Bundled demo datasets."""

from importlib import resources
from pathlib import Path


def table1_path() -> Path:
    """Path to the bundled three-annotator, three-block demo dataset.

    Nine items annotated in fixed triplet blocks by three annotators whose
    consistency differs: all blocks transitive, two of three, and one of
    three, giving kappas 1, 5/14 and -2/7 in weak mode.
    """
    return Path(str(resources.files("prefkit").joinpath("data/table1.csv")))
