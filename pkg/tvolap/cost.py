"""
Cost model module.

Analytic arithmetic-operation counts and latencies of the streaming
convolution algorithms, per audio sample and per channel. A real transform of
length 2N costs ``5 log2(N) + 14`` operations per block sample (N/2 log2 N
butterflies of 4 multiplications and 6 additions plus 4N multiplications and
10N additions of overhead).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from enum import Enum

from .errors import InvalidConfigurationError, InvalidSizeError
from .kernel import MIN_TRANSFORM_LENGTH
from .typeutils import is_power_of_two

# Serialized switching latency of a crossfade without a configured length.
FADE_DEPENDENT = "fade-dependent"

# Per-sample operations of a complex multiply-accumulate over the spectrum.
SPECTRAL_MAC_OPS = 8

# Per-sample operations of WOLA's synthesis window at 50 % overlap.
WOLA_SYNTHESIS_OPS = 2

# Per-sample blend operations of a crossfade (two multiplications, one addition).
CROSSFADE_OPS = 3


class Algorithm(Enum):
    """Algorithms covered by the cost model."""

    TDC = "tdc"
    CF_TDC = "cf-tdc"
    OLA = "ola"
    OLS = "ols"
    WOLA = "wola"
    TVOLAP = "tvolap"


@dataclass(frozen=True)
class CostReport:
    """Operation count and latencies of one algorithm configuration."""

    algorithm: Algorithm
    # Impulse response length.
    n_ir: int
    # Block size: 2L for TVOLAP, N_IR for the others.
    block: int
    # Sample rate in Hz.
    f_s: int
    # Arithmetic operations per audio sample.
    ops_per_sample: float
    # Millions of operations per second.
    mflops: float
    # Audio latency in samples.
    audio_latency: int
    # Switching latency in samples; None if it depends on an unset crossfade.
    switching_latency: int | None
    # Extra load while a crossfade runs (CF-TDC only).
    extra_switch_mflops: float = 0.0
    # Remark about a printed reference value, if any.
    note: str = ""

    @property
    def partitions(self) -> int:
        """Number of partitions M (1 for unpartitioned algorithms)."""

        return -(-self.n_ir // self.block) if self.algorithm is Algorithm.TVOLAP else 1

    def to_dict(self) -> dict[str, object]:
        """
        Convert the report into serializable fields.

        Returns:
            Field names mapped to plain values.
        """

        fields = asdict(self)
        fields["algorithm"] = self.algorithm.value
        fields["N_IR"] = fields.pop("n_ir")
        if self.switching_latency is None:
            fields["switching_latency"] = FADE_DEPENDENT

        return {name: fields[name] for name in FIELDS}


# Serialized field order.
FIELDS = (
    "algorithm",
    "N_IR",
    "block",
    "f_s",
    "ops_per_sample",
    "mflops",
    "audio_latency",
    "switching_latency",
    "extra_switch_mflops",
    "note",
)


def fft_ops_per_sample(n: int) -> float:
    """
    Operations per block sample of a real transform of length 2N.

    Args:
        n: Block size N.

    Raises:
        InvalidSizeError: Raised if N is not a power of two >= 8.

    Returns:
        ``5 log2(N) + 14``.
    """

    if n < MIN_TRANSFORM_LENGTH or not is_power_of_two(n):
        raise InvalidSizeError(f"Block size must be a power of two >= 8, got {n}.")

    return 5.0 * (n.bit_length() - 1) + 14.0


def _ola_ops(n_ir: int) -> float:
    # Forward and inverse transform, a complex product per bin, one overlap addition.
    return 2.0 * fft_ops_per_sample(n_ir) + 6.0 + 1.0


def _ops(algorithm: Algorithm, n_ir: int, block: int) -> float:
    if algorithm in (Algorithm.TDC, Algorithm.CF_TDC):
        return 2.0 * n_ir

    if algorithm is Algorithm.OLA:
        return _ola_ops(n_ir)

    if algorithm is Algorithm.OLS:
        return _ola_ops(n_ir) - 1.0

    if algorithm is Algorithm.WOLA:
        # Every sample passes two overlapping blocks, plus the two windows and the sum.
        return 2.0 * (_ola_ops(n_ir) + 3.0)

    count = -(-n_ir // block)
    return 4.0 * fft_ops_per_sample(block) + SPECTRAL_MAC_OPS * 2 * count + 4.0


def _latencies(
    algorithm: Algorithm, n_ir: int, block: int, fade: int | None
) -> tuple[int, int | None]:
    if algorithm is Algorithm.TDC:
        return 0, 0

    if algorithm is Algorithm.CF_TDC:
        return 0, fade

    if algorithm in (Algorithm.OLA, Algorithm.OLS):
        return n_ir, 0

    if algorithm is Algorithm.WOLA:
        return n_ir, n_ir // 2

    return block, block // 2


def cost(
    algorithm: Algorithm | str,
    n_ir: int,
    f_s: int = 48000,
    block: int | None = None,
    fade: int | None = None,
) -> CostReport:
    """
    Compute the cost report of an algorithm configuration.

    Args:
        algorithm: Algorithm or its short name.
        n_ir: Impulse response length.
        f_s: Sample rate in Hz. Defaults to 48000.
        block: Block size. Required for TVOLAP (2L); must equal N_IR if given
            for OLA, OLS and WOLA.
        fade: Crossfade length of CF-TDC in samples, if known.

    Raises:
        InvalidConfigurationError: Raised on non-positive parameters, a
            missing TVOLAP block size or a block size that differs from N_IR.
        InvalidSizeError: Raised if a transform size is not a power of two.

    Returns:
        The report.
    """

    try:
        algorithm = Algorithm(algorithm)
    except ValueError as error:
        raise InvalidConfigurationError(f"Unknown algorithm {algorithm!r}.") from error

    if n_ir <= 0 or f_s <= 0:
        raise InvalidConfigurationError(
            f"N_IR and f_s must be positive, got N_IR = {n_ir}, f_s = {f_s}."
        )

    if algorithm is Algorithm.TVOLAP:
        if block is None or block <= 0 or block % 2:
            raise InvalidConfigurationError(f"TVOLAP needs an even block size 2L, got {block}.")
    elif block is not None and block != n_ir:
        raise InvalidConfigurationError(
            f"{algorithm.value} uses a block size of N_IR = {n_ir}, got {block}."
        )
    else:
        block = n_ir

    if fade is not None and algorithm is not Algorithm.CF_TDC:
        raise InvalidConfigurationError("Only CF-TDC takes a crossfade length.")

    ops = _ops(algorithm, n_ir, block)
    audio_latency, switching_latency = _latencies(algorithm, n_ir, block, fade)

    extra = 0.0
    if algorithm is Algorithm.CF_TDC:
        extra = (2.0 * n_ir + CROSSFADE_OPS) * f_s / 1e6

    return CostReport(
        algorithm=algorithm,
        n_ir=n_ir,
        block=block,
        f_s=f_s,
        ops_per_sample=ops,
        mflops=ops * f_s / 1e6,
        audio_latency=audio_latency,
        switching_latency=switching_latency,
        extra_switch_mflops=extra,
        note=DISCREPANCIES.get((algorithm, n_ir, block, f_s), ""),
    )


def efficiency_ratio(reference: CostReport, candidate: CostReport) -> float:
    """
    How many times fewer operations the candidate needs than the reference.

    Args:
        reference: Report of the more expensive algorithm.
        candidate: Report of the cheaper algorithm.

    Returns:
        ``reference.mflops / candidate.mflops``.
    """

    return reference.mflops / candidate.mflops


# Printed reference cells that the canonical formulas do not reproduce exactly.
DISCREPANCIES: dict[tuple[Algorithm, int, int, int], str] = {
    (Algorithm.WOLA, 2048, 2048, 48000): (
        "Printed 14.064 MFLOPS corresponds to 293 ops/sample (2*145 + 3); the "
        "accompanying formula 2*(145 + 3) gives 296 ops/sample (14.208 MFLOPS)."
    ),
    (Algorithm.TVOLAP, 512, 512, 48000): (
        "Printed 12.192 MFLOPS corresponds to 254 ops/sample, the WOLA count minus "
        f"its {WOLA_SYNTHESIS_OPS} synthesis-window operations; the TVOLAP formula "
        "with M = 1 gives 256 ops/sample (12.288 MFLOPS)."
    ),
}


@dataclass(frozen=True)
class PublishedCell:
    """A printed table value next to the value of the cost model."""

    # Impulse response length of the table.
    n_ir: int
    algorithm: Algorithm
    # Column: "audio_latency", "switching_latency" or "mflops".
    column: str
    printed: float | str
    computed: float | str
    # Relative deviation of numeric cells.
    relative_error: float | None
    note: str = ""


# Printed tables: N_IR -> algorithm -> (audio latency, switching latency, MFLOPS).
_PUBLISHED: dict[int, dict[Algorithm, tuple[float | str, float | str, float | str]]] = {
    2048: {
        Algorithm.CF_TDC: (0, ">0", ">196.608"),
        Algorithm.OLA: (2048, 0, 6.96),
        Algorithm.WOLA: (2048, 1024, 14.064),
        Algorithm.TVOLAP: (512, 256, 14.592),
    },
    512: {
        Algorithm.CF_TDC: (0, ">0", ">49.152"),
        Algorithm.OLA: (512, 0, 6.0),
        Algorithm.WOLA: (512, 256, 12.288),
        Algorithm.TVOLAP: (512, 256, 12.192),
    },
}

# TVOLAP block size used in both tables.
PUBLISHED_TVOLAP_BLOCK = 512


def published_tables(f_s: int = 48000) -> list[PublishedCell]:
    """
    Compare every printed table cell with the cost model.

    Cells printed as lower bounds (">x") are compared against x; a lower-bound
    switching latency compares against the fade-dependent marker.

    Args:
        f_s: Sample rate in Hz. Defaults to 48000.

    Returns:
        One cell per table, algorithm and column.
    """

    cells = []
    for n_ir, rows in _PUBLISHED.items():
        for algorithm, printed_row in rows.items():
            block = PUBLISHED_TVOLAP_BLOCK if algorithm is Algorithm.TVOLAP else None
            report = cost(algorithm, n_ir, f_s, block)
            computed_row = (
                report.audio_latency,
                FADE_DEPENDENT if report.switching_latency is None else report.switching_latency,
                report.mflops,
            )

            for column, printed, computed in zip(
                ("audio_latency", "switching_latency", "mflops"), printed_row, computed_row
            ):
                relative_error = None
                if isinstance(computed, (int, float)):
                    bound = float(str(printed).lstrip(">"))
                    relative_error = (
                        abs(computed - bound) / abs(bound) if bound else float(computed != bound)
                    )

                cells.append(
                    PublishedCell(
                        n_ir=n_ir,
                        algorithm=algorithm,
                        column=column,
                        printed=printed,
                        computed=computed,
                        relative_error=relative_error,
                        note=report.note if column == "mflops" else "",
                    )
                )

    return cells


def to_csv(reports: list[CostReport]) -> str:
    """
    Serialize reports as CSV with a header row.

    Args:
        reports: Reports to serialize.

    Returns:
        CSV text.
    """

    stream = io.StringIO()
    writer = csv.DictWriter(stream, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerow(report.to_dict())

    return stream.getvalue()


def to_json(reports: list[CostReport]) -> str:
    """
    Serialize reports as a JSON array.

    Args:
        reports: Reports to serialize.

    Returns:
        JSON text.
    """

    return json.dumps([report.to_dict() for report in reports], indent=2)


def tables_to_csv(cells: list[PublishedCell]) -> str:
    """
    Serialize a table comparison as CSV.

    Args:
        cells: Output of :func:`published_tables`.

    Returns:
        CSV text.
    """

    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(
        ("N_IR", "algorithm", "column", "printed", "computed", "relative_error", "note")
    )
    for cell in cells:
        writer.writerow(
            (
                cell.n_ir,
                cell.algorithm.value,
                cell.column,
                cell.printed,
                cell.computed,
                "" if cell.relative_error is None else f"{cell.relative_error:.6f}",
                cell.note,
            )
        )

    return stream.getvalue()
