"""Benchmark fitness landscapes: random multimodal peaks, concatenated
deceptive traps, and two degenerate fixtures (OneMax, constant fitness).

All problems expose `length`, `optimum`, and are callable on a Genome.
They are immutable after construction and safe to share across runs.
"""

from __future__ import annotations

from .core import ConfigurationError, Genome, RandomSource


class OneMax:
    """Count of ones; optimum at the all-ones string."""

    def __init__(self, length: int):
        if length < 1:
            raise ConfigurationError(f"OneMax length must be >= 1, got {length}")
        self.length = length
        self.optimum = float(length)

    def __call__(self, genome: Genome) -> float:
        return float(genome.bits.bit_count())

    def describe(self) -> str:
        return f"onemax(length={self.length})"


class ConstantProblem:
    """Every genome scores the same value.

    Degenerate landscape used to exercise engine bookkeeping where
    selection pressure must be absent (uniform-fitness populations).
    """

    def __init__(self, length: int, value: float = 0.5):
        self.length = length
        self.value = value
        self.optimum = value

    def __call__(self, genome: Genome) -> float:
        return self.value

    def describe(self) -> str:
        return f"constant(length={self.length},value={self.value})"


class MultimodalLandscape:
    """Random-peak landscape: fitness is scaled Hamming proximity to the
    nearest peak, weighted by that peak's height.

        f(x) = (L - hamming(x, nearest)) / L * height(nearest)

    Among equidistant peaks the greatest height wins, then the lowest
    peak index. Peaks are distinct L-bit strings; max(heights) is 1.0,
    so fitness 1.0 is reached exactly on a height-1.0 peak.
    """

    def __init__(self, length: int, peaks: list[Genome], heights: list[float]):
        if not peaks:
            raise ConfigurationError("landscape needs at least one peak")
        if len(peaks) != len(heights):
            raise ConfigurationError("peaks and heights must have equal length")
        if len({p.bits for p in peaks}) != len(peaks):
            raise ConfigurationError("peaks must be distinct")
        for p in peaks:
            if p.length != length:
                raise ConfigurationError("all peaks must have the declared length")
        for h in heights:
            if not 0.0 < h <= 1.0:
                raise ConfigurationError(f"heights must lie in (0, 1], got {h}")
        if max(heights) != 1.0:
            raise ConfigurationError("at least one peak must have height 1.0")
        self.length = length
        self.peaks = list(peaks)
        self.heights = list(heights)
        self.optimum = 1.0
        self.scheme = "equal" if all(h == 1.0 for h in heights) else "custom"
        self._peak_bits = [p.bits for p in peaks]
        self._uniform = all(h == 1.0 for h in heights)

    def __call__(self, genome: Genome) -> float:
        x = genome.bits
        if self._uniform:
            d = min((x ^ p).bit_count() for p in self._peak_bits)
            return (self.length - d) / self.length
        # strict comparisons keep the greatest height, then the lowest index
        dmin = self.length + 1
        best_h = 0.0
        for p, h in zip(self._peak_bits, self.heights):
            d = (x ^ p).bit_count()
            if d < dmin:
                dmin = d
                best_h = h
            elif d == dmin and h > best_h:
                best_h = h
        return (self.length - dmin) / self.length * best_h

    def fitness_many(self, genomes: list[Genome]) -> list[float]:
        return [self(g) for g in genomes]

    def nearest_peak(self, genome: Genome) -> int:
        """Index of the peak that defines fitness(genome) (same tie rule)."""
        x = genome.bits
        dmin = self.length + 1
        best_h = -1.0
        best_i = 0
        for i, (p, h) in enumerate(zip(self._peak_bits, self.heights)):
            d = (x ^ p).bit_count()
            if d < dmin or (d == dmin and h > best_h):
                dmin = d
                best_h = h
                best_i = i
        return best_i

    def describe(self) -> str:
        return (
            f"multimodal(peaks={len(self.peaks)},length={self.length},"
            f"scheme={self.scheme})"
        )


def linear_heights(num_peaks: int, h_min: float) -> list[float]:
    """Heights linearly spaced from h_min to 1.0 in peak-index order."""
    if not 0.0 < h_min <= 1.0:
        raise ConfigurationError(f"h_min must lie in (0, 1], got {h_min}")
    if num_peaks == 1:
        return [1.0]
    step = (1.0 - h_min) / (num_peaks - 1)
    heights = [h_min + i * step for i in range(num_peaks)]
    heights[-1] = 1.0  # guard float drift at the top end
    return heights


def generate_multimodal(
    num_peaks: int,
    length: int,
    rng: RandomSource,
    scheme: str = "equal",
    h_min: float = 0.5,
) -> MultimodalLandscape:
    """Generate a landscape of `num_peaks` distinct random peaks.

    scheme 'equal' gives every peak height 1.0; 'linear' spaces heights
    from h_min to 1.0 in index order. Rejection sampling enforces peak
    distinctness, so num_peaks may not exceed 2^length.
    """
    if num_peaks < 1:
        raise ConfigurationError(f"num_peaks must be >= 1, got {num_peaks}")
    if num_peaks > (1 << length):
        raise ConfigurationError(
            f"cannot place {num_peaks} distinct peaks on {length} bits"
        )
    seen: set[int] = set()
    peaks: list[Genome] = []
    while len(peaks) < num_peaks:
        bits = rng.random_bits(length)
        if bits in seen:
            continue
        seen.add(bits)
        peaks.append(Genome(bits, length))
    if scheme == "equal":
        heights = [1.0] * num_peaks
    elif scheme == "linear":
        heights = linear_heights(num_peaks, h_min)
    else:
        raise ConfigurationError(f"unknown height scheme {scheme!r}")
    land = MultimodalLandscape(length, peaks, heights)
    land.scheme = scheme
    return land


def save_instance(land: MultimodalLandscape, path: str) -> None:
    """Write a landscape to a plain-text instance file.

    Header lines carry L, the peak count, and the height scheme; then one
    `<peak bits> <height>` line per peak, in index order.
    """
    lines = [
        f"L={land.length}",
        f"num_peaks={len(land.peaks)}",
        f"scheme={land.scheme}",
    ]
    for p, h in zip(land.peaks, land.heights):
        lines.append(f"{p.as_string()} {h!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_instance(path: str) -> MultimodalLandscape:
    with open(path, encoding="utf-8") as fh:
        raw = [ln.strip() for ln in fh if ln.strip()]
    if len(raw) < 4:
        raise ConfigurationError(f"instance file {path} is truncated")
    header = {}
    for ln in raw[:3]:
        key, _, val = ln.partition("=")
        header[key.strip()] = val.strip()
    try:
        length = int(header["L"])
        num_peaks = int(header["num_peaks"])
        scheme = header["scheme"]
    except (KeyError, ValueError) as exc:
        raise ConfigurationError(f"bad instance header in {path}: {exc}") from exc
    body = raw[3:]
    if len(body) != num_peaks:
        raise ConfigurationError(
            f"instance file {path} declares {num_peaks} peaks but has {len(body)}"
        )
    peaks, heights = [], []
    for ln in body:
        bits_s, _, h_s = ln.partition(" ")
        peaks.append(Genome.from_string(bits_s))
        heights.append(float(h_s))
    land = MultimodalLandscape(length, peaks, heights)
    land.scheme = scheme
    return land


def trap_block(ones: int, block_size: int, signal: float) -> float:
    """Single deceptive trap block as a function of the unitation count.

    Scores 1 at the all-ones block; otherwise 1 - signal - ones*(1-signal)/(k-1),
    which decreases strictly in `ones`, so hill climbing is pulled toward
    the all-zeros deceptive optimum at 1 - signal.
    """
    if block_size < 2:
        raise ConfigurationError(f"trap block size must be >= 2, got {block_size}")
    if not 0 <= ones <= block_size:
        raise ValueError(f"unitation {ones} out of range for block size {block_size}")
    if ones == block_size:
        return 1.0
    return 1.0 - signal - ones * (1.0 - signal) / (block_size - 1)


class ConcatTrap:
    """Sum of `blocks` independent trap blocks over consecutive bit slices.

    Global optimum is the all-ones string with fitness equal to `blocks`;
    each block also has a deceptive local optimum at all-zeros.
    """

    def __init__(self, blocks: int, block_size: int = 4, signal: float = 0.25):
        if blocks < 1:
            raise ConfigurationError(f"trap block count must be >= 1, got {blocks}")
        if block_size < 2:
            raise ConfigurationError(f"trap block size must be >= 2, got {block_size}")
        if not 0.0 < signal < 1.0:
            raise ConfigurationError(f"trap signal must lie in (0, 1), got {signal}")
        self.blocks = blocks
        self.block_size = block_size
        self.signal = signal
        self.length = blocks * block_size
        self.optimum = float(blocks)
        # per-unitation table; fitness is a table-lookup sum over slices
        self._table = [trap_block(u, block_size, signal) for u in range(block_size + 1)]

    def __call__(self, genome: Genome) -> float:
        bits = genome.bits
        k = self.block_size
        mask = (1 << k) - 1
        table = self._table
        total = 0.0
        for _ in range(self.blocks):
            total += table[(bits & mask).bit_count()]
            bits >>= k
        return total

    def describe(self) -> str:
        return (
            f"trap(blocks={self.blocks},block_size={self.block_size},"
            f"signal={self.signal})"
        )


def problem_optimum_reached(problem, fitness: float) -> bool:
    """Exact success predicate: known optimum reached exactly."""
    return fitness >= problem.optimum


__all__ = [
    "OneMax",
    "ConstantProblem",
    "MultimodalLandscape",
    "ConcatTrap",
    "generate_multimodal",
    "linear_heights",
    "save_instance",
    "load_instance",
    "trap_block",
    "problem_optimum_reached",
]
