"""Ingestion and validation of even-Maass-form datasets (maass-v1 format).

Format (UTF-8, line oriented, whitespace-separated tokens, '#' comments):

    %maass-v1
    window <t_lo> <t_hi>
    provenance <free text>
    form
    tj <decimal>
    parity even
    nu1sq <decimal>          # optional
    ap <prime> <decimal>     # one or more
    end

The harmonic weight nu1sq is input data, not computed: no finite algorithm
for it is available here, so when it is absent every weighted operation
errors rather than silently substituting 1.
"""

import math
from dataclasses import dataclass

from .arith import is_prime
from .errors import DatasetParseError, IncompleteDataError
from .hecke import HeckeSystem, kim_sarnak_certify

DUPLICATE_TOL = 1e-9


@dataclass
class MaassForm:
    tj: float
    hecke: HeckeSystem
    nu1sq: float | None = None
    parity: str = "even"

    @property
    def coeff_limit(self) -> int:
        return self.hecke.coeff_limit


@dataclass
class Dataset:
    forms: list[MaassForm]
    completeness_window: tuple[float, float] | None = None
    provenance: str = ""

    def window_covers(self, lo: float, hi: float) -> bool:
        if self.completeness_window is None:
            return False
        wlo, whi = self.completeness_window
        return wlo <= lo and hi <= whi

    def require_nu1sq(self) -> None:
        for f in self.forms:
            if f.nu1sq is None:
                raise IncompleteDataError(f"form tj={f.tj} has no nu1sq weight")


_FORM_KEYS = {"tj", "parity", "nu1sq", "ap", "end"}
_TOP_KEYS = {"window", "provenance", "form"}


def parse_dataset(text) -> Dataset:
    """Parse maass-v1 text (a string or an iterable of lines)."""
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = [ln.rstrip("\n") for ln in text]
    if not lines or lines[0].strip() != "%maass-v1":
        raise DatasetParseError(1, "missing %maass-v1 header")

    window = None
    provenance = ""
    forms: list[MaassForm] = []
    cur: dict | None = None

    def fail(i, msg):
        raise DatasetParseError(i + 1, msg)

    for i, raw in enumerate(lines[1:], start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        key = toks[0]
        if cur is None:
            if key not in _TOP_KEYS:
                fail(i, f"unknown key {key!r} outside a form block")
            if key == "window":
                if len(toks) != 3:
                    fail(i, "window needs exactly two decimals")
                try:
                    window = (float(toks[1]), float(toks[2]))
                except ValueError:
                    fail(i, "window bounds must be decimals")
                if window[0] < 0 or window[1] < window[0]:
                    fail(i, "window must satisfy 0 <= t_lo <= t_hi")
            elif key == "provenance":
                provenance = line[len("provenance") :].strip()
            elif key == "form":
                cur = {"tj": None, "parity": None, "nu1sq": None, "ap": {}}
        else:
            if key not in _FORM_KEYS:
                fail(i, f"unknown key {key!r} inside a form block")
            if key == "tj":
                if len(toks) != 2:
                    fail(i, "tj needs one decimal")
                try:
                    cur["tj"] = float(toks[1])
                except ValueError:
                    fail(i, f"bad tj value {toks[1]!r}")
            elif key == "parity":
                if len(toks) != 2 or toks[1] != "even":
                    fail(i, "only even forms are accepted (parity even)")
                cur["parity"] = "even"
            elif key == "nu1sq":
                if len(toks) != 2:
                    fail(i, "nu1sq needs one decimal")
                try:
                    cur["nu1sq"] = float(toks[1])
                except ValueError:
                    fail(i, f"bad nu1sq value {toks[1]!r}")
                if cur["nu1sq"] <= 0:
                    fail(i, "nu1sq must be positive")
            elif key == "ap":
                if len(toks) != 3:
                    fail(i, "ap needs a prime and a decimal")
                try:
                    p = int(toks[1])
                except ValueError:
                    fail(i, f"bad prime token {toks[1]!r}")
                if not is_prime(p):
                    fail(i, f"{p} is not prime")
                try:
                    cur["ap"][p] = float(toks[2])
                except ValueError:
                    fail(i, f"bad eigenvalue token {toks[2]!r}")
            elif key == "end":
                if cur["tj"] is None:
                    fail(i, "form block missing tj")
                if cur["parity"] is None:
                    fail(i, "form block missing parity")
                if not cur["ap"]:
                    fail(i, "form block needs at least one ap line")
                if cur["tj"] <= 0:
                    fail(i, f"tj must be positive, got {cur['tj']}")
                forms.append(
                    MaassForm(
                        tj=cur["tj"],
                        nu1sq=cur["nu1sq"],
                        hecke=HeckeSystem(prime_values=dict(sorted(cur["ap"].items()))),
                    )
                )
                cur = None
    if cur is not None:
        raise DatasetParseError(len(lines), "unterminated form block (missing end)")

    forms.sort(key=lambda f: f.tj)
    for a, b in zip(forms, forms[1:]):
        if abs(a.tj - b.tj) <= DUPLICATE_TOL:
            raise DatasetParseError(0, f"duplicate spectral parameter tj={a.tj}")
    return Dataset(forms=forms, completeness_window=window, provenance=provenance)


def serialize_dataset(ds: Dataset) -> str:
    """Canonical re-serialization (sorted forms, shortest round-trip floats)."""
    out = ["%maass-v1"]
    if ds.completeness_window is not None:
        out.append(f"window {ds.completeness_window[0]!r} {ds.completeness_window[1]!r}")
    if ds.provenance:
        out.append(f"provenance {ds.provenance}")
    for f in sorted(ds.forms, key=lambda g: g.tj):
        out.append("form")
        out.append(f"tj {f.tj!r}")
        out.append("parity even")
        if f.nu1sq is not None:
            out.append(f"nu1sq {f.nu1sq!r}")
        for p in sorted(f.hecke.prime_values):
            out.append(f"ap {p} {f.hecke.prime_values[p]!r}")
        out.append("end")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ValidationReport:
    tj: float
    coeff_limit: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(form: MaassForm) -> ValidationReport:
    """Report-only checks: spectral parameter, Kim-Sarnak certification."""
    issues = []
    if form.tj <= 0:
        issues.append(f"spectral parameter must be positive, got {form.tj}")
    limit = form.coeff_limit
    if limit >= 2:
        report = kim_sarnak_certify(form.hecke, limit)
        for n, ln, bound in report.violations:
            issues.append(f"Kim-Sarnak violation at n={n}: |lambda|={ln:.6g} > {bound:.6g}")
    return ValidationReport(tj=form.tj, coeff_limit=limit, violations=tuple(issues))


@dataclass(frozen=True)
class WeylReport:
    T: float
    weighted_count: float
    reference: float  # T^2 / pi^2
    ratio: float
    expected_ratio_even_only: float
    warning: str = ""


def weyl_check(dataset: Dataset, T: float) -> WeylReport:
    """Weighted count sum_{tj <= T} nu1sq against the full-basis T^2/pi^2.

    The dataset holds even forms only, so a complete table is expected to
    carry about half the full-basis mass; the 1/2 annotation is a documented
    heuristic, not an assertion.
    """
    warning = ""
    if not dataset.window_covers(0.0, T):
        warning = f"completeness window does not cover [0, {T}]"
    total = 0.0
    for f in dataset.forms:
        if f.tj <= T:
            if f.nu1sq is None:
                raise IncompleteDataError(f"form tj={f.tj} has no nu1sq weight")
            total += f.nu1sq
    ref = T * T / math.pi**2
    if not dataset.forms:
        warning = (warning + "; " if warning else "") + "empty dataset"
    ratio = total / ref if ref > 0 else 0.0
    return WeylReport(
        T=T,
        weighted_count=total,
        reference=ref,
        ratio=ratio,
        expected_ratio_even_only=0.5,
        warning=warning,
    )
