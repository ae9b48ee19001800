"""Atomic models of differences of subharmonic functions on disks.

A model is a finite signed sum of logarithmic kernels plus the real part of a
complex polynomial:

    U(z) = Re(sum_k c_k z^k) + sum_j mass_j * ln|z - a_j|.

Positive masses are the subharmonic part, negative masses the part that gets
subtracted; the polynomial contributes the harmonic background.  Everything
downstream (circle means, counting functions, growth characteristics) reduces
to closed forms or one-dimensional quadrature over these models.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (AtomOnCircle, CoincidentOppositeAtoms, ParseError,
                     SharedZeroPole)
from .quad import adaptive_simpson, bisect_sign_changes, golden_max

RADIUS_TOL = 1e-12


@dataclass(frozen=True)
class RieszAtom:
    """A point charge: ``mass * ln|z - location|``."""

    location: complex
    mass: float

    def __post_init__(self):
        object.__setattr__(self, "location", complex(self.location))
        object.__setattr__(self, "mass", float(self.mass))
        if not (math.isfinite(self.location.real) and math.isfinite(self.location.imag)):
            raise ValueError("atom location must be finite")
        if not math.isfinite(self.mass) or self.mass == 0.0:
            raise ValueError("atom mass must be finite and nonzero")

    @property
    def radius(self) -> float:
        return abs(self.location)


@dataclass(frozen=True)
class HarmonicPart:
    """Re of a complex polynomial, coefficient k multiplying z**k."""

    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if any(not (math.isfinite(c.real) and math.isfinite(c.imag)) for c in coeffs):
            raise ValueError("harmonic coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc.real


@dataclass(frozen=True)
class DeltaSubharmonicModel:
    """Finite atomic charge plus harmonic polynomial background."""

    atoms: tuple = ()
    harmonic: HarmonicPart = field(default_factory=HarmonicPart)

    def __post_init__(self):
        atoms = tuple(a if isinstance(a, RieszAtom) else RieszAtom(*a)
                      for a in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        pos = {a.location for a in atoms if a.mass > 0}
        neg = {a.location for a in atoms if a.mass < 0}
        shared = pos & neg
        if shared:
            raise CoincidentOppositeAtoms(
                f"atoms of both signs at {sorted(shared, key=abs)[0]}")

    @property
    def atom_radii(self) -> np.ndarray:
        return np.array([a.radius for a in self.atoms], dtype=float)


EMPTY_MODEL = DeltaSubharmonicModel()


@dataclass(frozen=True)
class RadialWindow:
    """A pair of radii 0 <= inner < outer."""

    inner: float
    outer: float

    def __post_init__(self):
        object.__setattr__(self, "inner", float(self.inner))
        object.__setattr__(self, "outer", float(self.outer))
        if not (0.0 <= self.inner < self.outer < math.inf):
            raise ValueError(f"need 0 <= inner < outer, got ({self.inner}, {self.outer})")


# ---------------------------------------------------------------------------
# evaluation

def _atom_arrays(model: DeltaSubharmonicModel):
    locs = np.array([a.location for a in model.atoms], dtype=complex)
    masses = np.array([a.mass for a in model.atoms], dtype=float)
    return locs, masses


def evaluate_many(model: DeltaSubharmonicModel, z) -> np.ndarray:
    """Pointwise values on an array of complex points; +-inf at atoms."""
    z = np.asarray(z, dtype=complex)
    out = model.harmonic(z) if model.harmonic.coefficients else np.zeros(z.shape)
    if model.atoms:
        locs, masses = _atom_arrays(model)
        dist = np.abs(z[..., None] - locs)
        with np.errstate(divide="ignore"):
            out = out + np.log(dist) @ masses
    return out


def evaluate(model: DeltaSubharmonicModel, z) -> float:
    """Value at a single point, with the +-inf convention at atoms."""
    return float(evaluate_many(model, np.asarray(complex(z))))


def _circle(model: DeltaSubharmonicModel, t: float):
    def f(theta):
        return evaluate_many(model, t * np.exp(1j * np.asarray(theta)))
    return f


def _atom_angles(model: DeltaSubharmonicModel) -> np.ndarray:
    if not model.atoms:
        return np.empty(0)
    ang = np.angle(np.array([a.location for a in model.atoms]))
    return np.concatenate([ang, ang + np.pi]) % (2.0 * np.pi)


def _on_circle(radii: np.ndarray, t: float, radius_tol: float) -> np.ndarray:
    return np.abs(radii - t) <= radius_tol * max(1.0, abs(t))


def circle_max(model: DeltaSubharmonicModel, t: float, samples: int = 2048,
               radius_tol: float = RADIUS_TOL) -> float:
    """sup of the model over the circle |z| = t.

    Returns +inf exactly when a negative-mass atom lies on the circle.  A
    positive-mass atom on a circle of positive radius leaves the supremum
    finite; at t = 0 the circle degenerates to the point 0.
    """
    t = float(t)
    if t == 0.0:
        return evaluate(model, 0.0)
    if model.atoms:
        locs, masses = _atom_arrays(model)
        hit = _on_circle(np.abs(locs), t, radius_tol)
        if np.any(hit & (masses < 0)):
            return math.inf
    return float(circle_max_many(model, np.array([t]), samples=samples,
                                 radius_tol=radius_tol)[0])


def circle_max_many(model: DeltaSubharmonicModel, ts, samples: int = 512,
                    radius_tol: float = RADIUS_TOL) -> np.ndarray:
    """Vectorized circle suprema over an array of radii.

    Grid scan over angles (including every atom angle and its antipode as
    candidates) followed by golden-section polish of the best brackets.
    Work is chunked over radii to keep the radius x angle x atom broadcasts
    within a fixed memory budget.
    """
    ts = np.asarray(ts, dtype=float)
    out = np.empty(ts.shape)
    pos = ts > 0.0
    if (~pos).any():
        out[~pos] = evaluate(model, 0.0)
    flat_idx = np.flatnonzero(pos)
    if flat_idx.size == 0:
        return out
    natoms = max(1, len(model.atoms))
    chunk = max(16, 4_000_000 // ((samples + 2 * natoms) * natoms))
    tpos = ts.reshape(-1)[flat_idx]
    res = np.empty(flat_idx.size)
    for k in range(0, flat_idx.size, chunk):
        res[k:k + chunk] = _circle_max_chunk(model, tpos[k:k + chunk],
                                             samples, radius_tol)
    out.reshape(-1)[flat_idx] = res
    return out


def _circle_max_chunk(model: DeltaSubharmonicModel, tp: np.ndarray,
                      samples: int, radius_tol: float) -> np.ndarray:
    base = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    cand = np.concatenate([base, _atom_angles(model)])
    z = tp[:, None] * np.exp(1j * cand)[None, :]
    vals = evaluate_many(model, z)
    vals = np.where(np.isnan(vals), -np.inf, vals)
    best = np.max(vals, axis=1)

    # polish around the grid argmax and around each atom angle
    spacing = 2.0 * np.pi / samples
    centers = [cand[np.argmax(vals, axis=1)]]
    for ang in _atom_angles(model):
        centers.append(np.full(tp.shape, ang))
    ctr = np.stack(centers, axis=1)
    lo = ctr - spacing
    hi = ctr + spacing

    def f(theta):
        zz = tp[:, None] * np.exp(1j * theta)
        v = evaluate_many(model, zz)
        return np.where(np.isnan(v), -np.inf, v)

    polished = golden_max(f, lo, hi, iters=40)
    best = np.maximum(best, np.max(polished, axis=1))

    if model.atoms:
        locs, masses = _atom_arrays(model)
        neg_radii = np.abs(locs[masses < 0])
        if neg_radii.size:
            coll = np.any(np.abs(tp[:, None] - neg_radii[None, :])
                          <= radius_tol * np.maximum(1.0, tp)[:, None], axis=1)
            best = np.where(coll, np.inf, best)
    return best


def circle_mean(model: DeltaSubharmonicModel, t: float,
                radius_tol: float = RADIUS_TOL) -> float:
    """Mean over the circle |z| = t, in closed form.

    Only the constant harmonic coefficient survives averaging; each atom
    contributes mass * ln(max(t, |a|)).  Raises AtomOnCircle when an atom
    sits on the circle within radius_tol (no principal-value handling).
    """
    t = float(t)
    if t <= 0.0:
        raise ValueError("circle_mean needs t > 0")
    c0 = model.harmonic.coefficients[0].real if model.harmonic.coefficients else 0.0
    if not model.atoms:
        return c0
    locs, masses = _atom_arrays(model)
    radii = np.abs(locs)
    hit = _on_circle(radii, t, radius_tol)
    if hit.any():
        raise AtomOnCircle(t)
    return c0 + float(masses @ np.log(np.maximum(t, radii)))


def circle_mean_max(model_a: DeltaSubharmonicModel, model_b: DeltaSubharmonicModel,
                    t: float, tol: float = 1e-8, samples: int = 1024,
                    radius_tol: float = RADIUS_TOL) -> float:
    """Mean of the pointwise max of two models over the circle |z| = t.

    Sign changes of the difference are located by sampling plus bisection;
    each monotone-sign arc is then integrated adaptively.  Absolute error
    <= tol, else ToleranceNotReached.
    """
    t = float(t)
    if t <= 0.0:
        raise ValueError("circle_mean_max needs t > 0")
    for m in (model_a, model_b):
        if m.atoms:
            radii = m.atom_radii
            if _on_circle(radii, t, radius_tol).any():
                raise AtomOnCircle(t)

    fa = _circle(model_a, t)
    fb = _circle(model_b, t)

    # the crossing scan runs on a denser grid than the quadrature would need:
    # a sign change missed inside one cell puts a kink into an arc, where the
    # Richardson acceptance test underestimates the true panel error
    scan = max(4 * samples, 4096)
    base = np.linspace(0.0, 2.0 * np.pi, scan, endpoint=False)
    nodes = np.unique(np.concatenate(
        [base, _atom_angles(model_a), _atom_angles(model_b)]))
    va = fa(nodes)
    vb = fb(nodes)
    diff = va - vb

    if np.max(np.abs(diff)) == 0.0:
        diff = np.ones_like(diff)  # identical models: integrate either one

    def g(theta):
        return fa(theta) - fb(theta)

    sign = np.where(diff >= 0.0, 1.0, -1.0)
    wrap_nodes = np.append(nodes, nodes[0] + 2.0 * np.pi)
    wrap_sign = np.append(sign, sign[0])
    flip = wrap_sign[:-1] * wrap_sign[1:] < 0
    crossings = np.empty(0)
    if flip.any():
        lo = wrap_nodes[:-1][flip]
        hi = wrap_nodes[1:][flip]
        crossings = bisect_sign_changes(g, lo, hi, np.where(diff >= 0, 1.0, -1.0)[flip])

    # every arc is additionally split at the atom angles it contains: the
    # integrand's narrow features sit exactly there, and a feature centered
    # on a panel boundary cannot alias past the Simpson error estimate
    base_feature = np.unique(np.concatenate([_atom_angles(model_a),
                                             _atom_angles(model_b)]))
    feature = np.concatenate([base_feature, base_feature + 2.0 * np.pi])

    def integrate_arc(a: float, b: float, pick) -> float:
        inner = feature[(feature > a) & (feature < b)]
        cuts = np.concatenate([[a], inner, [b]])
        out = 0.0
        for p, q in zip(cuts[:-1], cuts[1:]):
            out += adaptive_simpson(pick, p, q, 0.5 * tol * (q - p), min_depth=2)
        return out

    if crossings.size == 0:
        pick = fa if sign[0] > 0 else fb
        return integrate_arc(0.0, 2.0 * np.pi, pick) / (2.0 * np.pi)

    bounds = np.sort(crossings)
    arcs = np.empty((bounds.size, 2))
    arcs[:-1, 0] = bounds[:-1]
    arcs[:-1, 1] = bounds[1:]
    arcs[-1] = (bounds[-1], bounds[0] + 2.0 * np.pi)

    total = 0.0
    for a, b in arcs:
        mid = 0.5 * (a + b)
        pick = fa if float(g(np.array([mid]))[0]) >= 0.0 else fb
        total += integrate_arc(a, b, pick)
    return total / (2.0 * np.pi)


def circle_mean_plus(model: DeltaSubharmonicModel, t: float, tol: float = 1e-8,
                     samples: int = 1024, radius_tol: float = RADIUS_TOL) -> float:
    """Mean of the positive part over the circle |z| = t, by quadrature.

    The negative-part mean follows by feeding the negated model.
    """
    return circle_mean_max(model, EMPTY_MODEL, t, tol=tol, samples=samples,
                           radius_tol=radius_tol)


# ---------------------------------------------------------------------------
# structure

def negate(model: DeltaSubharmonicModel) -> DeltaSubharmonicModel:
    return DeltaSubharmonicModel(
        atoms=tuple(RieszAtom(a.location, -a.mass) for a in model.atoms),
        harmonic=HarmonicPart(tuple(-c for c in model.harmonic.coefficients)))


def canonical_split(model: DeltaSubharmonicModel):
    """Split U = u - v into subharmonic u and v.

    v collects the negative atoms with flipped sign; u keeps the positive
    atoms and the harmonic background, so u - v reproduces the model exactly.
    """
    u = DeltaSubharmonicModel(
        atoms=tuple(a for a in model.atoms if a.mass > 0),
        harmonic=model.harmonic)
    v = DeltaSubharmonicModel(
        atoms=tuple(RieszAtom(a.location, -a.mass) for a in model.atoms if a.mass < 0))
    return u, v


def from_rational(zeros=(), poles=(), scale: complex = 1.0) -> DeltaSubharmonicModel:
    """Model of ln|f| for the rational f = scale * prod(z-z_k)^m / prod(z-p_j)^n.

    zeros and poles are (location, multiplicity) pairs; multiplicities are
    positive integers.  Shared locations between the two lists are rejected.
    """
    scale = complex(scale)
    if scale == 0:
        raise ValueError("scale must be nonzero")
    atoms = []
    seen_zero = set()
    for loc, mult in zeros:
        if not (isinstance(mult, (int, np.integer)) and mult > 0):
            raise ValueError(f"zero multiplicity must be a positive integer, got {mult!r}")
        atoms.append(RieszAtom(complex(loc), float(mult)))
        seen_zero.add(complex(loc))
    for loc, mult in poles:
        if not (isinstance(mult, (int, np.integer)) and mult > 0):
            raise ValueError(f"pole multiplicity must be a positive integer, got {mult!r}")
        if complex(loc) in seen_zero:
            raise SharedZeroPole(f"zero and pole share location {complex(loc)}")
        atoms.append(RieszAtom(complex(loc), -float(mult)))
    return DeltaSubharmonicModel(
        atoms=tuple(atoms),
        harmonic=HarmonicPart((complex(math.log(abs(scale))),)))


# ---------------------------------------------------------------------------
# serialization

def model_to_json(model: DeltaSubharmonicModel, indent: int | None = None) -> str:
    doc = {
        "atoms": [{"re": a.location.real, "im": a.location.imag, "mass": a.mass}
                  for a in model.atoms],
        "harmonic": [[c.real, c.imag] for c in model.harmonic.coefficients],
    }
    return json.dumps(doc, indent=indent)


def model_from_json(text: str) -> DeltaSubharmonicModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} col {exc.colno}: {exc.msg}") from None
    try:
        atoms = tuple(RieszAtom(complex(a["re"], a["im"]), a["mass"])
                      for a in doc.get("atoms", ()))
        harmonic = HarmonicPart(tuple(complex(re, im)
                                      for re, im in doc.get("harmonic", ())))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad model document: {exc}") from None
    return DeltaSubharmonicModel(atoms=atoms, harmonic=harmonic)
