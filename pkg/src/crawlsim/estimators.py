"""scikit-learn compatible wrappers around the calibration routines.

``CrawlSpeedRegressor`` fits the fused efficiency-energy from observed
(attached mass, speed) pairs and predicts the composed-model speed for new
masses. ``OscillatorPeriodCalibrator`` fits the actuator heat loss to a
target period and predicts periods over supply currents.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .actuator import ActuatorParams
from .analytic import SpeedModelInput, avg_speed_composed, calibrate_thermal, oscillator_period
from .beam import BeamParams
from .errors import InvalidConfig, NoOscillation, TooFewEvents
from .locomotion import STANDARD_GRAVITY, RobotParams
from .oscillator import OscillatorConfig


class CrawlSpeedRegressor(RegressorMixin, BaseEstimator):
    """Average crawl speed as a function of attached mass.

    ``X`` has one column, the attached mass in kg. Speed is linear in the
    fused ``eta_E``, so the fit is a one-parameter least-squares solve; with
    a single sample it reduces to the exact inversion of the speed model.
    """

    def __init__(self, body_mass_kg=1.8e-3, mu_forward=0.36, gravity_m_s2=STANDARD_GRAVITY,
                 period_s=3.3):
        self.body_mass_kg = body_mass_kg
        self.mu_forward = mu_forward
        self.gravity_m_s2 = gravity_m_s2
        self.period_s = period_s

    def _unit_speed(self, masses):
        # composed speed per joule of eta_E
        out = np.empty(len(masses))
        for i, m in enumerate(masses):
            robot = RobotParams(
                body_mass_kg=self.body_mass_kg,
                attached_mass_kg=float(m),
                mu_forward=self.mu_forward,
                mu_backward=max(self.mu_forward, RobotParams.mu_backward),
                gravity_m_s2=self.gravity_m_s2,
            )
            out[i] = avg_speed_composed(SpeedModelInput(robot, 1.0, self.period_s))
        return out

    def fit(self, X, y):
        X, y = check_X_y(X, y, ensure_min_features=1)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single mass column, got {X.shape[1]}")
        if np.any(X[:, 0] <= 0):
            raise InvalidConfig("attached masses must be > 0")
        g = self._unit_speed(X[:, 0])
        self.eta_E_J_ = float(np.dot(g, y) / np.dot(g, g))
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "eta_E_J_")
        X = check_array(X)
        return self.eta_E_J_ * self._unit_speed(X[:, 0])


class OscillatorPeriodCalibrator(BaseEstimator):
    """Fit actuator heat loss to a measured period at one supply current.

    ``fit(X, y)`` takes ``X`` as supply currents (one column) and ``y`` as
    periods; the first sample is the calibration point. ``predict`` returns
    the simulated period at each current, ``inf`` where no oscillation occurs.
    """

    def __init__(self, actuator=None, beam=None, dt_s=0.01, horizon_s=60.0):
        self.actuator = actuator
        self.beam = beam
        self.dt_s = dt_s
        self.horizon_s = horizon_s

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        act = self.actuator if self.actuator is not None else ActuatorParams()
        beam = self.beam if self.beam is not None else BeamParams()
        self.actuator_ = calibrate_thermal(
            float(y[0]), float(X[0, 0]), act, beam, dt_s=self.dt_s, horizon_s=self.horizon_s
        )
        self.beam_ = beam
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "actuator_")
        X = check_array(X)
        out = np.empty(len(X))
        for i, current in enumerate(X[:, 0]):
            cfg = OscillatorConfig(self.beam_, self.actuator_, self.actuator_, float(current), self.dt_s)
            try:
                out[i] = oscillator_period(cfg, self.horizon_s)
            except (NoOscillation, TooFewEvents):
                out[i] = np.inf
        return out
