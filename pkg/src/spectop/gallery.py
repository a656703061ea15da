"""Curated ring families with their spectra and ground-truth verdicts.

Each entry pairs a ring description with the expression denoting its
spectrum, curated metadata flags, and (where known) a ground-truth record
sourced from the literature.  Ground truths are data with citation
strings; nothing here computes Gabriel dimension, semiartinianness or
absolute flatness.

Entries marked ``expect_inconclusive`` are the honesty checks: their
ground truth says the residue fields do not generate, but no implemented
rule can derive that, so the engine must answer Inconclusive and must
never answer Generates for them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import FieldsGenerate, Ltg, RingMeta, Verdict, evaluate
from .dsl import CANTOR, COFAN, FAN, Fin, SpaceExpr, print_expr
from .errors import SizeError
from .poset import construct_poset

OMEGA = "omega"


@dataclass(frozen=True)
class KnownTruth:
    """Ground-truth verdict record, stored as data with its source."""

    ltg: Ltg | None = None
    fields: FieldsGenerate | None = None
    citation: str = ""

    def to_dict(self) -> dict:
        return {
            "ltg": self.ltg.value if self.ltg else None,
            "fields_generate": self.fields.value if self.fields else None,
            "citation": self.citation,
        }


@dataclass(frozen=True)
class RingEntry:
    name: str
    description: str
    space: SpaceExpr
    meta: RingMeta = RingMeta()
    known_truth: KnownTruth | None = None
    expect_inconclusive: bool = False

    def verdict(self) -> Verdict:
        known = self.known_truth.fields if self.known_truth else None
        return evaluate(self.space, self.meta, known_fields=known)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "space": print_expr(self.space),
            "meta": self.meta.to_dict(),
            "known_truth": self.known_truth.to_dict() if self.known_truth else None,
            "expect_inconclusive": self.expect_inconclusive,
        }


def _fan_poset(n: int):
    labels = [f"p{i}" for i in range(1, n + 1)] + ["m"]
    return construct_poset(labels, [(f"p{i}", "m") for i in range(1, n + 1)])


def fan_ring(n) -> RingEntry:
    """The axes ring: k[x_1,...]_(x_1,...) / (x_i x_j : i != j).

    Its spectrum has one minimal prime per axis, each an isolated point,
    all sitting under the single maximal ideal.  For n = omega the module
    category has Gabriel dimension (curated flag), the residue fields
    generate, and the local-to-global principle still fails because the
    punctured spectrum is not quasi-compact.
    """
    if n == OMEGA:
        return RingEntry(
            name="fan",
            description=(
                "k[x_1,x_2,...]_(x_1,x_2,...) / (x_i x_j : i != j), the local "
                "ring at the origin of infinitely many glued axes"
            ),
            space=FAN,
            meta=RingMeta(has_gabriel_dimension=True),
            known_truth=KnownTruth(
                ltg=Ltg.FAILS,
                fields=FieldsGenerate.GENERATES,
                citation=(
                    "axes ring: explicit Gabriel filtration in two steps; "
                    "no idempotent cuts out the closed point since the "
                    "punctured spectrum is not quasi-compact"
                ),
            ),
        )
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a natural number or {OMEGA!r}, got {n!r}")
    if n == 0:
        space = Fin(construct_poset(["m"], []))
    else:
        space = Fin(_fan_poset(n))
    return RingEntry(
        name="fan",
        description=f"k[x_1,...,x_{n}]_(x_1,...,x_{n}) / (x_i x_j : i != j), {n} glued axes",
        space=space,
    )


def idempotent_ring(n, max_points: int = 4096) -> RingEntry:
    """k[e_1,e_2,...] with every e_i idempotent.

    A prime ideal is determined by the 0/1 pattern of which generators it
    contains, so the finite truncation has 2^n points with the discrete
    order, and the full ring has the Cantor set as spectrum.  The ring is
    reduced and zero-dimensional, hence absolutely flat (curated flag).
    """
    if n == OMEGA:
        return RingEntry(
            name="idempotent",
            description="k[e_1,e_2,...] with e_i^2 = e_i; the spectrum is the Cantor set",
            space=CANTOR,
            meta=RingMeta(absolutely_flat=True),
            known_truth=KnownTruth(
                ltg=Ltg.FAILS,
                fields=FieldsGenerate.DOES_NOT_GENERATE,
                citation="the Cantor set has no isolated points, so no Cantor-Bendixson rank",
            ),
        )
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a natural number or {OMEGA!r}, got {n!r}")
    points = 2 ** n
    if points > max_points:
        raise SizeError(f"2^{n} = {points} points exceeds the budget of {max_points}")
    space = Fin(construct_poset([f"p{i}" for i in range(points)], []))
    return RingEntry(
        name="idempotent",
        description=f"k[e_1,...,e_{n}] with e_i^2 = e_i (isomorphic to k^{points})",
        space=space,
        meta=RingMeta(absolutely_flat=True),
    )


def curated_examples() -> list[RingEntry]:
    """The non-sufficiency witnesses plus a noetherian-domain shape."""
    return [
        RingEntry(
            name="valuation_rank1",
            description="a non-noetherian rank one valuation domain",
            space=Fin(construct_poset(["zero", "m"], [("zero", "m")])),
            known_truth=KnownTruth(
                fields=FieldsGenerate.DOES_NOT_GENERATE,
                citation="Bazzoni-Stovicek: cotorsion-pair results for valuation domains",
            ),
            expect_inconclusive=True,
        ),
        RingEntry(
            name="neeman_ring",
            description="k[x_2,x_3,x_4,...]/(x_2^2, x_3^3, x_4^4, ...), a ring with a unique prime",
            space=Fin(construct_poset(["m"], [])),
            known_truth=KnownTruth(
                fields=FieldsGenerate.DOES_NOT_GENERATE,
                citation="Neeman: the residue field of this local ring does not generate",
            ),
            expect_inconclusive=True,
        ),
        RingEntry(
            name="integers_like",
            description=(
                "a one-dimensional noetherian domain with infinitely many "
                "maximal ideals, e.g. the integers.  The Gabriel-dimension "
                "flag is the classical fact that noetherian module "
                "categories have Krull-Gabriel filtrations (Gabriel, "
                "Gordon-Robson); it is curated here, not computed."
            ),
            space=COFAN,
            meta=RingMeta(has_gabriel_dimension=True),
            known_truth=KnownTruth(
                ltg=Ltg.HOLDS,
                fields=FieldsGenerate.GENERATES,
                citation="noetherian rings have Gabriel dimension; the dual spectrum is scattered",
            ),
        ),
    ]


def catalog() -> list[RingEntry]:
    """Every gallery entry at its default parameter."""
    return [fan_ring(OMEGA), idempotent_ring(OMEGA)] + curated_examples()


def get_entry(name: str, n=None) -> RingEntry:
    """Resolve a gallery entry by name; parametric families accept ``n``."""
    if name == "fan":
        return fan_ring(OMEGA if n is None else n)
    if name == "idempotent":
        return idempotent_ring(OMEGA if n is None else n)
    for entry in curated_examples():
        if entry.name == name:
            return entry
    raise KeyError(f"no gallery entry named {name!r}")
