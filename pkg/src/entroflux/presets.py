"""Named sweep scenarios covering the standard figure families.

Rates are in units of the second oscillator's frequency (omega_c, or the
mechanical omega_m for the optomech presets); theta = pi throughout, the
loop phase that turns reflection into extra damping.  Presets whose loop is
strong (tau = 0.9) state their loss as the effective, loop-dressed decay
kappa_fb; the bare kappa_a stored here is kappa_fb / (1 + 2 tau).
"""
from __future__ import annotations

import math

from .errors import ConfigError
from .model import FeedbackParams
from .optomech import OptoParams
from .sweep import Scenario, SweepSpec

# bare decay that the tau = 0.9, theta = pi loop dresses up to 0.2
_KAPPA_BARE_09 = 0.2 / 2.8


def _fig1():
    base = FeedbackParams(omega_a=0.0, kappa_a=_KAPPA_BARE_09, kappa_c=0.2,
                          g=0.05, tau=0.9, theta=math.pi)
    return Scenario(kind="generic", base=base,
                    sweep=SweepSpec("omega_a", 0.0, 5.0, 0.01), name="fig1")


def _fig2():
    base = FeedbackParams(omega_a=0.0, kappa_a=0.2, kappa_c=0.2, g=0.005,
                          tau=0.9, theta=math.pi, n_a=0.0, n_c=10.0)
    return Scenario(kind="generic", base=base,
                    sweep=SweepSpec("omega_a", 0.0, 5.0, 0.01), name="fig2")


def _fig3():
    base = FeedbackParams(omega_a=1.0, kappa_a=0.2, kappa_c=0.5, g=0.025,
                          tau=0.1, theta=math.pi, n_a=0.0, n_c=100.0)
    return Scenario(kind="generic", base=base,
                    sweep=SweepSpec("n_a", 0.0, 200.0, 1.0), name="fig3")


def _fig4():
    base = FeedbackParams(omega_a=1.0, kappa_a=0.2, kappa_c=0.2, g=0.05,
                          tau=0.0, theta=math.pi)
    return Scenario(kind="generic", base=base,
                    sweep=SweepSpec("tau", 0.0, 0.95, 0.01), name="fig4")


def _fig5():
    base = FeedbackParams(omega_a=0.0, kappa_a=0.2, kappa_c=0.2, g=0.05,
                          tau=0.85, theta=math.pi)
    return Scenario(kind="generic", base=base,
                    sweep=SweepSpec("omega_a", 0.0, 2.0, 0.01), name="fig5")


def _fig6():
    base = OptoParams(kappa_a=_KAPPA_BARE_09, gamma_m=1e-3, delta_0=0.0,
                      g0=0.0, omega_m=1.0, tau=0.9, theta=math.pi,
                      n_a=0.0, n_c=1000.0)
    return Scenario(kind="optomech", base=base,
                    sweep=SweepSpec("delta_0", -2.0, 2.0, 0.01),
                    g_direct=0.005, name="fig6")


def _fig7():
    base = OptoParams(kappa_a=0.5, gamma_m=1e-2, delta_0=0.0, g0=0.0,
                      omega_m=1.0, tau=0.9, theta=math.pi,
                      n_a=0.0, n_c=10.0)
    return Scenario(kind="optomech", base=base,
                    sweep=SweepSpec("delta_0", -2.0, 2.0, 0.01),
                    g_direct=0.05, name="fig7")


_PRESETS = {
    "fig1": (_fig1, "frequency sweep, strong feedback (tau 0.9), ground-state"
             " baths, loop-matched losses kappa_fb = kappa_c = 0.2"),
    "fig2": (_fig2, "frequency sweep at weak coupling (g 0.005) with a hot"
             " second bath (n_c 10), tau 0.9"),
    "fig3": (_fig3, "first-bath occupation sweep n_a in [0, 200] against a"
             " fixed n_c = 100, weak loop (tau 0.1)"),
    "fig4": (_fig4, "feedback-strength sweep tau in [0, 0.95] at resonance,"
             " ground-state baths"),
    "fig5": (_fig5, "frequency sweep in the entangling regime (tau 0.85),"
             " ground-state baths"),
    "fig6": (_fig6, "optomechanical detuning sweep, hot mechanics (n_c 1e3),"
             " narrow gamma_m = 1e-3, light-enhanced g 0.005"),
    "fig7": (_fig7, "optomechanical detuning sweep at strong coupling"
             " (g 0.05), tau 0.9, n_c 10"),
}


def preset_names():
    return tuple(_PRESETS)


def preset_description(name):
    if name not in _PRESETS:
        raise ConfigError(f"unknown preset {name!r}; known: {', '.join(_PRESETS)}")
    return _PRESETS[name][1]


def get_preset(name):
    """Fresh Scenario for one of the named presets."""
    if name not in _PRESETS:
        raise ConfigError(f"unknown preset {name!r}; known: {', '.join(_PRESETS)}")
    return _PRESETS[name][0]()
