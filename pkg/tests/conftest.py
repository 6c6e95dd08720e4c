"""Shared test helpers."""

from popsizing import Genome, Individual


class ScriptedRng:
    """Duck-typed stand-in for RandomSource with a scripted draw sequence.

    `uniforms` feeds random(); `ints` feeds randint_below() verbatim, so
    the script must respect the caller's range (asserted defensively).
    """

    def __init__(self, uniforms=(), ints=()):
        self._uniforms = list(uniforms)
        self._ints = list(ints)

    def random(self) -> float:
        return self._uniforms.pop(0)

    def randint_below(self, n: int) -> int:
        v = self._ints.pop(0)
        assert 0 <= v < n, f"scripted draw {v} outside range({n})"
        return v


def make_pop(fitnesses, length=8):
    """Population of blank genomes with given fitnesses, births 0,1,2,..."""
    g = Genome(0, length)
    return [Individual(g, f, i) for i, f in enumerate(fitnesses)]
