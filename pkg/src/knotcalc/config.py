"""Run configuration shared by the obstruction engine and the CLI.

Every report embeds the full configuration it was produced under, so
identical inputs and configuration give byte-identical reports.
"""

from __future__ import annotations

import os


DEFAULT_REGISTRY_ENV = "KNOTCALC_REGISTRY"


class RunConfig:
    """Conventions, budgets and precision for a toolkit run.

    signature_convention: "mass1" (Haar measure of total mass 1) or
        "mass2pi" (arc-length measure, total mass 2 pi).
    jump_averaging: whether endpoint values of signature jumps are
        averaged when a signature function is REPORTED pointwise; the
        integrals never depend on it (jumps have measure zero) and the
        flag is recorded so reports are self-describing.
    """

    __slots__ = ("signature_convention", "jump_averaging", "enumeration_budget",
                 "lll_bound", "precision_digits", "registry_path",
                 "output_format", "prime_power_r")

    def __init__(self, signature_convention="mass1", jump_averaging=False,
                 enumeration_budget=10 ** 6, lll_bound=10 ** 6,
                 precision_digits=60, registry_path=None,
                 output_format="json", prime_power_r=3):
        if signature_convention not in ("mass1", "mass2pi"):
            raise ValueError("signature_convention must be mass1 or mass2pi")
        if output_format not in ("json", "tsv", "human"):
            raise ValueError("output_format must be json, tsv or human")
        self.signature_convention = signature_convention
        self.jump_averaging = bool(jump_averaging)
        self.enumeration_budget = int(enumeration_budget)
        self.lll_bound = int(lll_bound)
        self.precision_digits = int(precision_digits)
        self.registry_path = registry_path
        self.output_format = output_format
        self.prime_power_r = int(prime_power_r)

    def resolve_registry_path(self):
        if self.registry_path:
            return self.registry_path
        env = os.environ.get(DEFAULT_REGISTRY_ENV)
        if env:
            return env
        return os.path.join(os.path.dirname(__file__), "data",
                            "fact_registry.json")

    def to_json(self):
        return {
            "signature_convention": self.signature_convention,
            "jump_averaging": self.jump_averaging,
            "enumeration_budget": self.enumeration_budget,
            "lll_bound": self.lll_bound,
            "precision_digits": self.precision_digits,
            "registry_path": self.registry_path or "(packaged default)",
            "output_format": self.output_format,
            "prime_power_r": self.prime_power_r,
        }
