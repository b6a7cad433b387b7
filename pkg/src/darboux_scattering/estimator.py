"""scikit-learn style wrapper around a deformed scenario.

Nothing is learned from data; ``fit`` validates the configuration, builds the
scenario and runs the regularity gate, so the object composes with
``get_params``/``set_params``, ``clone`` and parameter grids.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .amplitudes import deform_amplitudes
from .darboux import Scenario, deformed_potential
from .exceptions import ZeroWronskian
from .potentials import make_potential
from .regularity import check_regularity
from .scenario_io import parse_seed_list
from .seeds import make_seed


class DeformedScattering(BaseEstimator, TransformerMixin):
    """Deformed amplitudes as ``predict`` and the deformed potential as ``transform``.

    Parameters
    ----------
    family : str
        Family tag such as ``"soliton"`` or ``"morse"``.
    params : mapping
        Family parameters.
    seeds : str or sequence of tuples
        ``"twist:0,overshoot:7"`` or tuples accepted by ``Scenario.build``.
    output : {"r", "t", "both"}
        What ``predict`` returns.
    force : bool
        Skip the regularity gate.
    """

    def __init__(self, family: str = "soliton", params: Optional[Mapping[str, float]] = None,
                 seeds: Sequence = (), output: str = "r", force: bool = False):
        self.family = family
        self.params = params
        self.seeds = seeds
        self.output = output
        self.force = force

    def _build(self) -> Scenario:
        spec = make_potential(self.family, **dict(self.params or {}))
        if isinstance(self.seeds, str):
            seeds = tuple(make_seed(spec, s.kind, s.degree, s.twist) for s in parse_seed_list(self.seeds))
            return Scenario(spec, seeds)
        return Scenario.build(spec, list(self.seeds))

    def fit(self, X=None, y=None):
        if self.output not in ("r", "t", "both"):
            raise ValueError(f"output must be 'r', 't' or 'both', got {self.output!r}")
        sc = self._build()
        self.regularity_ = None
        if sc.M and not self.force:
            self.regularity_ = check_regularity(sc)
            if not self.regularity_.regular:
                raise ZeroWronskian(self.regularity_.zeros[0] if self.regularity_.zeros else float("nan"))
        self.scenario_ = sc
        return self

    def predict(self, k) -> np.ndarray:
        """Amplitudes at real wavenumbers ``k``; ``output="both"`` stacks (t, r) as columns."""
        check_is_fitted(self, "scenario_")
        k = np.asarray(k, dtype=float).ravel()
        d = deform_amplitudes(self.scenario_, k)
        if self.output == "r":
            return d.r_D
        if d.t_D is None:
            raise ValueError(f"{self.scenario_.spec.label} has no transmission amplitude")
        return d.t_D if self.output == "t" else np.column_stack([d.t_D, d.r_D])

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "scenario_")
        x = np.asarray(X, dtype=float)
        shape = x.shape
        out = deformed_potential(self.scenario_, x.ravel(), check=False) if self.scenario_.M \
            else self.scenario_.spec.potential(x.ravel())
        return np.asarray(out, dtype=float).reshape(shape)

    def score(self, X, y) -> float:
        """Negative max deviation between ``predict(X)`` and reference amplitudes ``y``."""
        return -float(np.max(np.abs(self.predict(X) - np.asarray(y))))
