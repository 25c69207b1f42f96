"""Named figure presets: canned sweeps that reproduce the standard plots for
each witness and state family.

Every preset is a single sweep; the returned table carries a trailing
``scale`` column (an overall plotting factor, recorded separately and never
folded into the values).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .moments import DEFAULT_CONTROL, SeriesControl
from .states import Family
from .sweep import SweepConfig, Table, run_sweep

_DEF_MAG = (0.0, 5.0, 101)
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class FigurePreset:
    preset_id: str
    description: str
    config: SweepConfig
    scale: float = 1.0


def _preset(preset_id, description, witness, family, photons, fock, order=(0,),
            mag=_DEF_MAG, phase=0.0, grid=None):
    return FigurePreset(
        preset_id=preset_id,
        description=description,
        config=SweepConfig(
            witness=witness,
            family=Family(family),
            photons_list=tuple(photons),
            fock_list=tuple(fock),
            alpha_mag=mag,
            alpha_phase=phase,
            order=tuple(order),
            grid=grid,
        ),
    )


def _build_presets() -> dict[str, FigurePreset]:
    presets: list[FigurePreset] = []

    # Mandel Q versus |alpha|: (a, c) vary added/subtracted photons at n=1,
    # (b, d) vary the starting Fock level at one added/subtracted photon.
    for tag, family in (("a", "padfs"), ("c", "psdfs")):
        presets.append(_preset(
            f"fig2{tag}", f"Mandel Q vs |alpha|, {family}, photons 1..4, n=1",
            "MandelQ", family, (1, 2, 3, 4), (1,)))
    for tag, family in (("b", "padfs"), ("d", "psdfs")):
        presets.append(_preset(
            f"fig2{tag}", f"Mandel Q vs |alpha|, {family}, 1 photon, n=0..3",
            "MandelQ", family, (1,), (0, 1, 2, 3)))

    # Antibunching d(l-1) and higher-order sub-Poissonian D_h(l-1) share the
    # panel layout: (a) orders 2..5 at photons=1, n=1; (b) photons 1..3 at
    # order 3; (c) n=0..3 at order 3; (d, e, f) repeat for subtraction.
    for fig, witness in (("fig3", "Antibunching"), ("fig4", "HOSPS")):
        for tags, family in ((("a", "b", "c"), "padfs"), (("d", "e", "f"), "psdfs")):
            presets.append(_preset(
                f"{fig}{tags[0]}", f"{witness} vs |alpha|, {family}, orders 2..5",
                witness, family, (1,), (1,), order=(2, 3, 4, 5)))
            presets.append(_preset(
                f"{fig}{tags[1]}", f"{witness} vs |alpha|, {family}, photons 1..3, order 3",
                witness, family, (1, 2, 3), (1,), order=(3,)))
            presets.append(_preset(
                f"{fig}{tags[2]}", f"{witness} vs |alpha|, {family}, n=0..3, order 3",
                witness, family, (1,), (0, 1, 2, 3), order=(3,)))

    # Hong-Mandel S(l): (a) even orders 2, 4, 6; (b) photons 1..3 at order 4;
    # (c) n=0..3 at order 4; (d, e, f) subtraction twins.
    for tags, family in ((("a", "b", "c"), "padfs"), (("d", "e", "f"), "psdfs")):
        presets.append(_preset(
            f"fig5{tags[0]}", f"Hong-Mandel S vs |alpha|, {family}, orders 2,4,6",
            "HongMandel", family, (1,), (1,), order=(2, 4, 6)))
        presets.append(_preset(
            f"fig5{tags[1]}", f"Hong-Mandel S vs |alpha|, {family}, photons 1..3, order 4",
            "HongMandel", family, (1, 2, 3), (1,), order=(4,)))
        presets.append(_preset(
            f"fig5{tags[2]}", f"Hong-Mandel S vs |alpha|, {family}, n=0..3, order 4",
            "HongMandel", family, (1,), (0, 1, 2, 3), order=(4,)))

    # Husimi Q over the complex plane at alpha = sqrt(2) e^{i pi/4}.
    fig6_states = (
        ("a", "padfs", 1, 1), ("b", "padfs", 2, 1), ("c", "padfs", 1, 2),
        ("d", "psdfs", 1, 1), ("e", "psdfs", 2, 1), ("f", "psdfs", 1, 2),
    )
    for tag, family, photons, fock in fig6_states:
        presets.append(_preset(
            f"fig6{tag}",
            f"Husimi Q grid, {family}, photons={photons}, n={fock}, alpha=sqrt(2)e^(i pi/4)",
            "qgrid", family, (photons,), (fock,),
            mag=(_SQRT2, _SQRT2, 1), phase=math.pi / 4))

    # Hong-Mandel S versus the displacement phase at fixed |alpha| = 0.4.
    for tag, family in (("a", "padfs"), ("b", "psdfs")):
        presets.append(_preset(
            f"fig7{tag}", f"Hong-Mandel S vs phase, {family}, |alpha|=0.4, orders 2,4",
            "HongMandel", family, (1,), (1,), order=(2, 4),
            mag=(0.4, 0.4, 1), phase=(0.0, 2.0 * math.pi, 41)))

    # Agarwal-Tara A3 versus |alpha|.
    for tag, family in (("a", "padfs"), ("c", "psdfs")):
        presets.append(_preset(
            f"fig8{tag}", f"Agarwal-Tara A3 vs |alpha|, {family}, photons 1..3, n=1",
            "AgarwalTara", family, (1, 2, 3), (1,)))
    for tag, family in (("b", "padfs"), ("d", "psdfs")):
        presets.append(_preset(
            f"fig8{tag}", f"Agarwal-Tara A3 vs |alpha|, {family}, 1 photon, n=0..3",
            "AgarwalTara", family, (1,), (0, 1, 2, 3)))

    # Klyshko B(m) for m = 0..8 at alpha = 1.
    for tag, family in (("a", "padfs"), ("c", "psdfs")):
        presets.append(_preset(
            f"fig9{tag}", f"Klyshko B(m) at alpha=1, {family}, photons 1..3, n=1",
            "Klyshko", family, (1, 2, 3), (1,),
            order=tuple(range(9)), mag=(1.0, 1.0, 1)))
    for tag, family in (("b", "padfs"), ("d", "psdfs")):
        presets.append(_preset(
            f"fig9{tag}", f"Klyshko B(m) at alpha=1, {family}, 1 photon, n=0..3",
            "Klyshko", family, (1,), (0, 1, 2, 3),
            order=tuple(range(9)), mag=(1.0, 1.0, 1)))

    return {p.preset_id: p for p in presets}


PRESETS: dict[str, FigurePreset] = _build_presets()

PRESET_IDS: tuple[str, ...] = tuple(sorted(PRESETS))


def figure_preset(
    preset_id: str,
    ctrl: SeriesControl = DEFAULT_CONTROL,
    workers: int = 1,
) -> Table:
    """Run one preset and return its table with the scale column appended."""
    if preset_id not in PRESETS:
        raise DomainError(f"unknown preset {preset_id!r}; known ids: {', '.join(PRESET_IDS)}")
    preset = PRESETS[preset_id]
    table = run_sweep(preset.config, ctrl, workers)
    table.columns = table.columns + ("scale",)
    table.rows = [row + (preset.scale,) for row in table.rows]
    table.meta["preset"] = preset.preset_id
    table.meta["description"] = preset.description
    table.meta["scale"] = preset.scale
    return table
