"""Open reaction networks as decorated corelations, and their steady-state black boxes.

The layers, bottom up: ``finset`` (skeletal finite sets), ``cospan``
(cospans and corelations), ``decor`` (decorated corelations), ``kan``
(the Kan-extension presentation), ``dynam`` (polynomial vector fields and
mass-action networks), ``sarel`` (relations cut out by polynomial equations)
and ``blackbox`` (the functor between the last two). ``cli`` drives them.
"""

__version__ = "0.1.0"
