from __future__ import annotations

import pytest

from adaptchain import load_fixture
from adaptchain.generator import SplitMix64
from adaptchain.model import BOT, AvailabilityVector, Interface

# The Video1toVideo2 dependency table, written out literally so tests can
# check the bundled fixture and the adaptation semantics against an
# independent source instead of the code under test.
VIDEO1_TO_VIDEO2_ROWS = {
    ("bot", "bot"): ({"bot"}, {"bot"}, {"bot"}, {"bot"}),
    ("bot", "MP3"): ({"bot"}, {"bot"}, {"bot"}, {"bot"}),
    ("bot", "OGG"): ({"bot"}, {"bot"}, {"bot"}, {"bot"}),
    ("bot", "WAV"): ({"bot"}, {"bot"}, {"bot"}, {"bot"}),
    ("MOV", "bot"): ({"bot", "MP4"}, {"bot"}, {"bot"}, {"bot"}),
    ("MOV", "MP3"): ({"bot", "MP4"}, {"bot"}, {"bot"}, {"bot"}),
    ("MOV", "OGG"): ({"bot", "MP4"}, {"bot"}, {"bot"}, {"bot"}),
    ("MOV", "WAV"): ({"bot", "MP4"}, {"bot"}, {"bot"}, {"bot"}),
    ("AVI", "bot"): ({"bot", "INDEO", "DIVX"}, {"bot"}, {"bot"}, {"bot"}),
    ("AVI", "MP3"): ({"bot", "INDEO", "DIVX"}, {"bot"}, {"bot"}, {"bot"}),
    ("AVI", "OGG"): ({"bot", "INDEO", "DIVX"}, {"bot"}, {"bot"}, {"bot"}),
    ("AVI", "WAV"): ({"bot", "INDEO", "DIVX"}, {"bot"}, {"bot"}, {"bot"}),
    ("MKV", "bot"): ({"bot", "MP4", "DIVX", "THEORA"}, {"bot"}, {"bot"}, {"bot"}),
    ("MKV", "MP3"): ({"bot", "MP4", "DIVX", "THEORA"}, {"bot"}, {"bot"}, {"bot"}),
    ("MKV", "OGG"): ({"bot", "MP4", "DIVX", "THEORA"}, {"bot"}, {"bot"}, {"bot"}),
    ("MKV", "WAV"): ({"bot", "MP4", "DIVX", "THEORA"}, {"bot"}, {"bot"}, {"bot"}),
}


@pytest.fixture(scope="session")
def video_graph():
    return load_fixture("video-example")


def random_subvector(
    rng: SplitMix64, interface: Interface, within: AvailabilityVector | None = None
) -> AvailabilityVector:
    """A random bot-normalized vector over the interface, optionally a
    componentwise subset of ``within``."""
    components = []
    for i, domain in enumerate(interface.domains):
        pool = sorted(
            (within.components[i] if within is not None else set(domain.non_bottom))
            - {BOT}
        )
        mask = rng.below(2 ** len(pool)) if pool else 0
        chosen = {v for k, v in enumerate(pool) if mask >> k & 1}
        components.append(frozenset(chosen) | {BOT})
    return AvailabilityVector(interface.id, tuple(components))
