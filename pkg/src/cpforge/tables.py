"""Census grids over (k, D), their predictions, and text renderings."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .cache import CountCache
from .cockspinch import CountResult, SearchParams, count_triples
from .heuristics import Prediction, predicted_count, round_half_away

# (k, D) pairs left out of every report: the assumptions behind the
# prediction fail for them
EXCLUDED = frozenset({(3, 3), (4, 1), (6, 3)})

# (k, D, degree of r(x)) of the known complete family with rho-value 1
RHO_ONE_FAMILIES = {(12, 3): 4}

CSV_HEADER = ["k", "D", "rho", "r_min", "r_max", "n1", "n2", "n3", "i", "i1", "i2", "i3", "e", "excluded"]


def parse_int_list(text: str) -> list[int]:
    """'3..18' or '1,2,3' (or a mix such as '3..5,8')."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    if not out:
        raise ValueError(f"no integers in {text!r}")
    return out


def parse_rho(text: str) -> Fraction:
    rho = Fraction(text.strip())
    if rho <= 1:
        raise ValueError(f"rho must exceed 1, got {text}")
    return rho


def parse_range(text: str) -> tuple[int, int]:
    lo, hi = text.split(":")
    lo, hi = int(lo), int(hi)
    if lo < 5 or hi < lo:
        raise ValueError(f"bad r range {text!r}: need 5 <= min <= max")
    return lo, hi


@dataclass(frozen=True)
class Cell:
    k: int
    D: int
    rho: Fraction
    r_min: int
    r_max: int
    counts: CountResult | None
    prediction: Prediction

    @property
    def excluded(self) -> bool:
        return (self.k, self.D) in EXCLUDED

    @property
    def e(self) -> int:
        return self.prediction.e

    def rho_one_family(self) -> bool:
        """True when a rho-value-1 family makes the prediction inapplicable."""
        deg = RHO_ONE_FAMILIES.get((self.k, self.D))
        return deg is not None and self.rho <= 1 + Fraction(1, deg)


def run_grid(
    k_list,
    d_list,
    rho: Fraction,
    r_min: int,
    r_max: int,
    counts: bool = True,
    cache: CountCache | None = None,
    workers: int | None = None,
) -> list[Cell]:
    cells = []
    for k in k_list:
        for D in d_list:
            p = SearchParams(k, D, rho, r_min, r_max)
            result = None
            if counts:
                result = cache.get(p) if cache else None
                if result is None:
                    result = count_triples(p, workers)
                    if cache:
                        cache.put(p, result)
            pred = predicted_count(k, D, float(rho), r_min, r_max)
            cells.append(Cell(k, D, p.rho, r_min, r_max, result, pred))
    return cells


def column_average(cells: list[Cell], D: int, attr: str) -> float | None:
    """Mean over k of value/e(k, D), skipping excluded pairs."""
    vals = [getattr(c.counts, attr) / c.e for c in cells if c.D == D and not c.excluded and c.counts]
    return sum(vals) / len(vals) if vals else None


def _fmt_rho(rho: Fraction) -> str:
    return f"{float(rho):.4f}"


def to_csv(cells: list[Cell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for c in cells:
        n = c.counts
        pr = c.prediction
        w.writerow([
            c.k, c.D, _fmt_rho(c.rho), c.r_min, c.r_max,
            "" if n is None else n.n1, "" if n is None else n.n2, "" if n is None else n.n3,
            f"{pr.I:.4f}", f"{pr.I1:.4f}", f"{pr.I2:.4f}", f"{pr.I3:.4f}",
            c.e, int(c.excluded),
        ])
    return buf.getvalue()


def _grid(cells: list[Cell]) -> tuple[list[int], list[int], dict]:
    ks = list(dict.fromkeys(c.k for c in cells))
    ds = list(dict.fromkeys(c.D for c in cells))
    return ks, ds, {(c.k, c.D): c for c in cells}


def header_prediction(pr: Prediction, i: int) -> float:
    """The k-independent (e = 1) prediction for N_i, as in a table header row."""
    return pr.I1 * float((1, pr.ratio2, pr.ratio3)[i - 1])


def _md_row(label: str, values) -> str:
    return "| " + " | ".join([str(label), *[str(v) for v in values]]) + " |"


def count_markdown(cells: list[Cell]) -> str:
    """N1/N2/N3 grids with the predicted header row and the k-average row.

    Cells with e(k, D) = 2 are marked with a trailing '*'.
    """
    ks, ds, by = _grid(cells)
    blocks = []
    for i, n_attr in enumerate(("n1", "n2", "n3"), start=1):
        lines = [f"### N{i}", "", _md_row("D", ds), _md_row("---", ["---"] * len(ds))]
        head = [round_half_away(header_prediction(by[(ks[0], D)].prediction, i)) for D in ds]
        lines.append(_md_row(f"I{i}", head))
        for k in ks:
            row = []
            for D in ds:
                c = by[(k, D)]
                if c.excluded:
                    row.append("")
                else:
                    row.append(f"{getattr(c.counts, n_attr)}{'*' if c.e == 2 else ''}")
            lines.append(_md_row(f"k={k}", row))
        avg = [column_average(cells, D, n_attr) for D in ds]
        lines.append(_md_row("Avg", ["" if a is None else round_half_away(a) for a in avg]))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def predict_markdown(cells: list[Cell]) -> str:
    lines = [
        _md_row("k", ["D", "rho", "e", "I", "I1", "I2", "I3"]),
        _md_row("---", ["---"] * 7),
    ]
    for c in cells:
        pr = c.prediction
        lines.append(_md_row(c.k, [
            c.D, _fmt_rho(c.rho), c.e,
            round_half_away(pr.I), round_half_away(pr.I1), round_half_away(pr.I2), round_half_away(pr.I3),
        ]))
    return "\n".join(lines) + "\n"


def predict_csv(cells: list[Cell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "D", "rho", "r_min", "r_max", "e", "i", "i1", "i2", "i3"])
    for c in cells:
        pr = c.prediction
        w.writerow([c.k, c.D, _fmt_rho(c.rho), c.r_min, c.r_max, c.e,
                    round_half_away(pr.I), round_half_away(pr.I1),
                    round_half_away(pr.I2), round_half_away(pr.I3)])
    return buf.getvalue()


@dataclass(frozen=True)
class CompareLine:
    cell: Cell
    ratio: float | None
    gap: bool


GAP_RATIO = 2.0


def compare(cells: list[Cell]) -> tuple[list[CompareLine], dict[int, dict[str, float | None]]]:
    """Observed against predicted per cell, plus weighted column averages.

    A cell is flagged as a gap when N1 is at least GAP_RATIO times the
    prediction I; the known rho-value-1 family produces such gaps.
    """
    lines = []
    for c in cells:
        I = c.prediction.I
        n1 = c.counts.n1 if c.counts else 0
        ratio = n1 / I if I > 0 else None
        gap = not c.excluded and ratio is not None and n1 >= 5 and ratio >= GAP_RATIO
        lines.append(CompareLine(c, ratio, gap))
    avgs = {}
    for D in dict.fromkeys(c.D for c in cells):
        avgs[D] = {a: column_average(cells, D, a) for a in ("n1", "n2", "n3")}
    return lines, avgs


def compare_report(cells: list[Cell]) -> tuple[str, bool]:
    """Markdown comparison report and whether any anomaly was flagged."""
    lines, avgs = compare(cells)
    out = [
        _md_row("k", ["D", "rho", "e", "N1", "I", "N1/I", "N2", "I2", "N3", "I3", "flags"]),
        _md_row("---", ["---"] * 11),
    ]
    anomaly = False
    for ln in lines:
        c = ln.cell
        n = c.counts or CountResult()
        pr = c.prediction
        flags = []
        if c.excluded:
            flags.append("excluded")
        if c.e == 2:
            flags.append("e=2")
        if ln.gap:
            flags.append("GAP: N1 >> I")
            anomaly = True
        if c.rho_one_family():
            flags.append("rho-value-1 family below its threshold")
        out.append(_md_row(c.k, [
            c.D, _fmt_rho(c.rho), c.e,
            n.n1, round_half_away(pr.I), "-" if ln.ratio is None else f"{ln.ratio:.3f}",
            n.n2, round_half_away(pr.I2), n.n3, round_half_away(pr.I3),
            ", ".join(flags),
        ]))
    out += ["", "Column averages (e=2 cells weighted 1/2, excluded pairs omitted):", ""]
    out.append(_md_row("D", ["Avg N1", "I1", "Avg N2", "I2", "Avg N3", "I3"]))
    out.append(_md_row("---", ["---"] * 6))
    first = {}
    for c in cells:
        first.setdefault(c.D, c)
    for D, a in avgs.items():
        pr = first[D].prediction
        row = []
        for i, attr in enumerate(("n1", "n2", "n3"), start=1):
            row.append("" if a[attr] is None else round_half_away(a[attr]))
            row.append(round_half_away(header_prediction(pr, i)))
        out.append(_md_row(D, row))
    return "\n".join(out) + "\n", anomaly
