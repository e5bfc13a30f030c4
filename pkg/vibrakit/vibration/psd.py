# vibrakit/vibration/psd.py
"""
Random-vibration metrics on acceleration PSDs (G²/Hz).

A PsdProfile is a test level: breakpoints joined by straight lines in
log-log space. A PsdCurve is a sampled measurement channel.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import InputError, OutOfBandError

# Slopes closer than this to -1 use the logarithmic segment integral
_LOG_SLOPE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PsdProfile:
    frequencies: Tuple[float, ...]
    psd: Tuple[float, ...]

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        p = np.asarray(self.psd, dtype=float)
        if f.size == 0 or f.size != p.size:
            raise InputError("PSD profile needs matching, non-empty frequency and PSD columns")
        if not (np.all(np.isfinite(f)) and np.all(np.isfinite(p))):
            raise InputError("PSD profile values must be finite")
        if np.any(f <= 0):
            raise InputError("PSD profile frequencies must be positive")
        if np.any(np.diff(f) <= 0):
            raise InputError("PSD profile frequencies must be strictly increasing")
        if np.any(p <= 0):
            raise InputError("PSD profile breakpoints must have PSD > 0")

    @classmethod
    def from_points(cls, points: Sequence[Tuple[float, float]]) -> "PsdProfile":
        return cls(
            frequencies=tuple(float(f) for f, _ in points),
            psd=tuple(float(p) for _, p in points),
        )

    @property
    def band(self) -> Tuple[float, float]:
        return self.frequencies[0], self.frequencies[-1]

    def segments(self):
        """(f1, p1, f2, p2, slope) per segment; slope is d ln P / d ln f"""
        for i in range(len(self.frequencies) - 1):
            f1, f2 = self.frequencies[i], self.frequencies[i + 1]
            p1, p2 = self.psd[i], self.psd[i + 1]
            yield f1, p1, f2, p2, math.log(p2 / p1) / math.log(f2 / f1)

    def scaled(self, factor: float) -> "PsdProfile":
        if factor <= 0:
            raise InputError(f"PSD scale factor must be positive, got {factor}")
        return PsdProfile(self.frequencies, tuple(p * factor for p in self.psd))


@dataclass(frozen=True, eq=False)
class PsdCurve:
    label: str
    frequencies: np.ndarray
    psd: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        p = np.asarray(self.psd, dtype=float)
        if f.ndim != 1 or f.size == 0 or f.size != p.size:
            raise InputError(f"curve '{self.label}' needs matching, non-empty columns")
        if np.any(np.diff(f) <= 0):
            raise InputError(f"curve '{self.label}' frequencies must be increasing")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise InputError(f"curve '{self.label}' PSD values must be finite and >= 0")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "psd", p)

    def value_at(self, frequency: float) -> float:
        """Linear interpolation between samples; exact on a sample"""
        f = self.frequencies
        if not f[0] <= frequency <= f[-1]:
            raise OutOfBandError(
                f"{frequency} Hz is outside curve '{self.label}' ({f[0]}-{f[-1]} Hz)"
            )
        return float(np.interp(frequency, f, self.psd))

    def scaled(self, factor: float) -> "PsdCurve":
        return PsdCurve(self.label, self.frequencies.copy(), self.psd * factor)


@dataclass(frozen=True)
class MagnificationResult:
    peak_frequency: float
    sensor_psd: float
    reference_psd: float
    magnification: float
    convention: str = "psd"


@dataclass(frozen=True)
class MagnificationRow:
    """One axis of a test-evaluation table: low-level peak beside the test-level result"""

    axis: str
    modal_frequency: Optional[float]
    result: MagnificationResult


def psd_at(profile: PsdProfile, frequency: float) -> float:
    """Profile value at `frequency` by log-log interpolation"""
    f = profile.frequencies
    if not f[0] <= frequency <= f[-1]:
        raise OutOfBandError(f"{frequency} Hz is outside the profile band {f[0]}-{f[-1]} Hz")
    i = int(np.searchsorted(f, frequency))
    if f[i] == frequency:
        return profile.psd[i]
    f1, f2 = f[i - 1], f[i]
    p1, p2 = profile.psd[i - 1], profile.psd[i]
    slope = math.log(p2 / p1) / math.log(f2 / f1)
    return p1 * (frequency / f1) ** slope


def _segment_area(f1: float, p1: float, f2: float, slope: float) -> float:
    if abs(slope + 1.0) < _LOG_SLOPE_TOLERANCE:
        return p1 * f1 * math.log(f2 / f1)
    return p1 * f1 / (slope + 1.0) * ((f2 / f1) ** (slope + 1.0) - 1.0)


def grms(profile: PsdProfile) -> float:
    """Root of the exact power-law integral of the profile"""
    area = sum(_segment_area(f1, p1, f2, m) for f1, p1, f2, _, m in profile.segments())
    return math.sqrt(area)


def slope_db_per_octave(f1: float, p1: float, f2: float, p2: float) -> float:
    if f1 <= 0 or f2 <= 0 or f1 == f2 or p1 <= 0 or p2 <= 0:
        raise InputError("slope needs two distinct positive frequencies and positive PSDs")
    return 10.0 * math.log10(p2 / p1) / math.log2(f2 / f1)


def scale_to_grms(profile: PsdProfile, target: float) -> PsdProfile:
    """Same shape, PSD scaled so the overall level is `target` Grms"""
    if target <= 0:
        raise InputError(f"target Grms must be positive, got {target}")
    current = grms(profile)
    if current == 0:
        raise InputError("a single-breakpoint profile has no area to scale")
    return profile.scaled((target / current) ** 2)


def miles_acceleration(f_n: float, q: float, profile: PsdProfile) -> float:
    """SDOF rms response sqrt(π/2 · f_n · Q · PSD(f_n)), in G"""
    if q <= 0.5:
        raise InputError(f"Q must exceed 0.5, got {q}")
    return math.sqrt(math.pi / 2.0 * f_n * q * psd_at(profile, f_n))


def three_sigma(rms: float) -> float:
    if rms < 0:
        raise InputError(f"rms acceleration cannot be negative, got {rms}")
    return 3.0 * rms


def sdof_transmissibility(frequency, f_n: float, q: float):
    """|H|² of base-excited absolute acceleration for a single-DOF oscillator"""
    if f_n <= 0 or q <= 0.5:
        raise InputError("transmissibility needs f_n > 0 and Q > 0.5")
    r = np.asarray(frequency, dtype=float) / f_n
    two_zeta_r = r / q
    return (1.0 + two_zeta_r**2) / ((1.0 - r**2) ** 2 + two_zeta_r**2)


def find_peak(curve: PsdCurve, band: Tuple[float, float]) -> Tuple[float, float]:
    """Sample with the largest PSD inside the band; the lowest frequency wins ties"""
    lo, hi = band
    if lo > hi:
        raise InputError(f"band lower edge {lo} exceeds upper edge {hi}")
    mask = (curve.frequencies >= lo) & (curve.frequencies <= hi)
    if not mask.any():
        raise OutOfBandError(f"curve '{curve.label}' has no samples in {lo}-{hi} Hz")
    f = curve.frequencies[mask]
    p = curve.psd[mask]
    i = int(np.argmax(p))
    return float(f[i]), float(p[i])


def response_magnification(
    sensor: PsdCurve,
    reference: PsdCurve,
    band: Tuple[float, float],
    min_reference: float = 1e-12,
    amplitude: bool = False,
) -> MagnificationResult:
    """Sensor peak over the reference at the same frequency

    PSD ratio by default; `amplitude=True` reports the square root (acceleration ratio).
    """
    f_peak, s_peak = find_peak(sensor, band)
    r_peak = reference.value_at(f_peak)
    if r_peak <= min_reference:
        raise InputError(
            f"reference '{reference.label}' is {r_peak:.3g} G²/Hz at {f_peak} Hz "
            f"(minimum {min_reference:.3g})"
        )
    ratio = s_peak / r_peak
    return MagnificationResult(
        peak_frequency=f_peak,
        sensor_psd=s_peak,
        reference_psd=r_peak,
        magnification=math.sqrt(ratio) if amplitude else ratio,
        convention="amplitude" if amplitude else "psd",
    )


def magnification_row(
    axis: str,
    sensor: PsdCurve,
    reference: PsdCurve,
    band: Tuple[float, float],
    low_level: Optional[PsdCurve] = None,
    min_reference: float = 1e-12,
    amplitude: bool = False,
) -> MagnificationRow:
    modal = find_peak(low_level, band)[0] if low_level is not None else None
    result = response_magnification(sensor, reference, band, min_reference, amplitude)
    return MagnificationRow(axis=axis, modal_frequency=modal, result=result)
