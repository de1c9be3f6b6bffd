"""
Schémas d'ordre quatre: ETDRK4 (coefficients par intégrale de contour) et RK4 à facteur intégrant.
"""

import numpy as np

from ..base import BaseScheme
from ..registry import register_scheme

# Points de la quadrature de contour (cercle complet: L est imaginaire pur).
CONTOUR_POINTS = 32


@register_scheme("etdrk4")
class ETDRK4Scheme(BaseScheme):
    """Différences temporelles exponentielles, Runge-Kutta d'ordre 4."""

    def prepare(self):
        h = self.step_size
        lh = h * self.linear
        self.exp_full = np.exp(lh)
        self.exp_half = np.exp(0.5 * lh)

        roots = np.exp(2j * np.pi * (np.arange(CONTOUR_POINTS) + 0.5) / CONTOUR_POINTS)
        lr = lh[:, None] + roots[None, :]
        lr2, lr3 = lr ** 2, lr ** 3
        exp_lr = np.exp(lr)
        self.coeff_q = h * np.mean((np.exp(0.5 * lr) - 1.0) / lr, axis=1)
        self.coeff_f1 = h * np.mean((-4.0 - lr + exp_lr * (4.0 - 3.0 * lr + lr2)) / lr3, axis=1)
        self.coeff_f2 = h * np.mean((2.0 + lr + exp_lr * (lr - 2.0)) / lr3, axis=1)
        self.coeff_f3 = h * np.mean((-4.0 - 3.0 * lr - lr2 + exp_lr * (4.0 - lr)) / lr3, axis=1)

    def advance(self, v_hat: np.ndarray) -> np.ndarray:
        n_0 = self.nonlinear(v_hat)
        a = self.exp_half * v_hat + self.coeff_q * n_0
        n_a = self.nonlinear(a)
        b = self.exp_half * v_hat + self.coeff_q * n_a
        n_b = self.nonlinear(b)
        c = self.exp_half * a + self.coeff_q * (2.0 * n_b - n_0)
        n_c = self.nonlinear(c)
        return (self.exp_full * v_hat + self.coeff_f1 * n_0
                + 2.0 * self.coeff_f2 * (n_a + n_b) + self.coeff_f3 * n_c)


@register_scheme("ifrk4")
class IFRK4Scheme(BaseScheme):
    """RK4 classique sur w = exp(-L t) v."""

    def prepare(self):
        lh = self.step_size * self.linear
        self.exp_full = np.exp(lh)
        self.exp_half = np.exp(0.5 * lh)

    def advance(self, v_hat: np.ndarray) -> np.ndarray:
        h = self.step_size
        k_1 = self.nonlinear(v_hat)
        k_2 = self.nonlinear(self.exp_half * (v_hat + 0.5 * h * k_1))
        k_3 = self.nonlinear(self.exp_half * v_hat + 0.5 * h * k_2)
        k_4 = self.nonlinear(self.exp_full * v_hat + h * self.exp_half * k_3)
        return self.exp_full * v_hat + (h / 6.0) * (
            self.exp_full * k_1 + 2.0 * self.exp_half * (k_2 + k_3) + k_4
        )
