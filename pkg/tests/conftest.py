import random
from importlib import resources

import pytest

from ograph.core import build, parse


def chain(p, sign=1):
    """The lens-space chain: p crossings in a row (a spine of L(p,1))."""
    edges = [("c0.over_out", "c0.under_in")]
    for i in range(p - 1):
        edges += [(f"c{i}.under_out", f"c{i + 1}.under_in"), (f"c{i + 1}.over_out", f"c{i}.over_in")]
    edges.append((f"c{p - 1}.under_out", f"c{p - 1}.over_in"))
    return build({f"c{i}": sign for i in range(p)}, edges)


def fixture(name):
    return parse((resources.files("ograph") / "data" / f"{name}.og").read_text())


def relabel_randomly(g, seed):
    """Same graph with shuffled crossing and edge names."""
    from ograph.core import relabel

    rng = random.Random(seed)
    cs = sorted(g.crossings)
    new = [f"x{i}" for i in range(len(cs))]
    rng.shuffle(new)
    es = [e.id for e in g.edges]
    enew = [f"y{i}" for i in range(len(es))]
    rng.shuffle(enew)
    return relabel(g, dict(zip(cs, new)), dict(zip(es, enew)))


FIXTURES = [f"lens{p}" for p in range(1, 9)] + ["s3", "l21"]


@pytest.fixture(params=FIXTURES)
def corpus_graph(request):
    return fixture(request.param)
