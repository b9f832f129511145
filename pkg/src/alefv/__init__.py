"""High order one-step ALE WENO finite volume solver for 1D hyperbolic balance laws.

The package couples a polynomial WENO reconstruction on moving irregular
meshes with an element-local space-time Galerkin predictor, giving
arbitrary-order one-step schemes that handle stiff relaxation source terms
implicitly.  Meshes may be held fixed (Eulerian), moved with the fluid
(Lagrangian) or driven by any other velocity field.
"""

__version__ = "0.1.0"
