"""Published Yukawa eigenvalues (halved) for the n = 9 and n = 10 levels.

Each entry is ``(n, ell, alpha, lambda/2 at N=200, lambda/2 at N=1500)``,
computed with TCII, the heuristic ``xi`` and the order-8 scheme.
"""

from __future__ import annotations

from typing import NamedTuple

__all__ = ["Table1Row", "TABLE1", "TABLE1_ORDER", "TABLE1_NPOINTS"]

TABLE1_ORDER = 8
TABLE1_NPOINTS = (200, 1500)


class Table1Row(NamedTuple):
    n: int
    ell: int
    alpha: float
    half_n200: float
    half_n1500: float


TABLE1: tuple[Table1Row, ...] = (
    Table1Row(9, 0, 0.010, -0.0005858266584, -0.0005858247613),
    Table1Row(9, 1, 0.010, -0.0005665076452, -0.0005665076262),
    Table1Row(9, 2, 0.010, -0.0005276644219, -0.0005276644203),
    Table1Row(9, 3, 0.010, -0.0004688490639, -0.0004688490636),
    Table1Row(9, 4, 0.010, -0.0003893108560, -0.0003893108559),
    Table1Row(9, 5, 0.010, -0.0002878564558, -0.0002878564558),
    Table1Row(9, 6, 0.005, -0.0022606077423, -0.0022606077423),
    Table1Row(9, 7, 0.005, -0.0021997976659, -0.0021997976659),
    Table1Row(9, 8, 0.005, -0.0021291265596, -0.0021291265596),
    Table1Row(10, 0, 0.005, -0.0015083751962, -0.0015083559308),
    Table1Row(10, 1, 0.005, -0.0015009237055, -0.0015009235029),
    Table1Row(10, 2, 0.005, -0.0014860116411, -0.0014860116241),
    Table1Row(10, 3, 0.005, -0.0014635239308, -0.0014635239276),
    Table1Row(10, 4, 0.005, -0.0014333097815, -0.0014333097805),
    Table1Row(10, 5, 0.005, -0.0013951561297, -0.0013951561294),
    Table1Row(10, 6, 0.005, -0.0013487749861, -0.0013487749860),
    Table1Row(10, 7, 0.005, -0.0012937846260, -0.0012937846260),
    Table1Row(10, 8, 0.005, -0.0012296811836, -0.0012296811836),
)
