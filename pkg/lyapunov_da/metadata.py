# -*- coding: utf-8 -*-

"Metadata for the bundled example systems and the reported results."

metadata = {}

"""The bundled example systems.

Fields
------
file : str
    The system definition in the package's data directory.
dimension : int
    The number of state variables.
degree : int
    The default truncation degree.
bounds : (float, ...)
    Default sampling box, lower and upper limit for each coordinate in turn.
exact : str (optional)
    The exact domain of attraction, when it is known in closed form.
published : dict
    The order of approximation and timings of the first two growth steps as
    published for this system, shown next to the measured timings.
"""

metadata["examples"] = {
    "example1": {
        "file": "example1.sys",
        "description": "Bounded domain of attraction: a disk off the origin",
        "dimension": 2,
        "degree": 50,
        "bounds": (-3.0, 5.0, -4.0, 4.0),
        "exact": "(x1 - 1)^2 + x2^2 < 4",
        "published": {"order": 50, "step 1": "1.7 min", "step 2": "34.7 min"},
    },
    "example2": {
        "description": "Unbounded domain of attraction in three dimensions",
        "file": "example2.sys",
        "dimension": 3,
        "degree": 30,
        "bounds": (-2.0, 2.0, -2.0, 2.0, -2.0, 2.0),
        "exact": "x1^2 + x2^2 - x3^2 < 1",
        "published": {"order": 30, "step 1": "10.2 min", "step 2": "14.7 h"},
    },
    "example3": {
        "description": "Two distinct real eigenvalues and a nonsymmetric field",
        "file": "example3.sys",
        "dimension": 2,
        "degree": 30,
        "bounds": (-4.0, 4.0, -4.0, 4.0),
        "published": {"order": 30, "step 1": "0.9 min", "step 2": "9.9 min"},
    },
    "example4": {
        "description": "Complex conjugate eigenvalues in three dimensions",
        "file": "example4.sys",
        "dimension": 3,
        "degree": 30,
        "bounds": (-3.0, 3.0, -3.0, 3.0, -3.0, 3.0),
        "published": {"order": 30, "step 1": "19.1 min", "step 2": "16.2 h"},
    },
}

"""Description of the computed results.

Fields
------
description : str
    A human readable description of the result.
dimensionality : str
    "scalar" or the shape, e.g. "[n]".
type : str
    The Python type of the value.
units : str (optional)
"""

metadata["results"] = {
    "eigenvalues": {
        "description": "eigenvalues of the Jacobian at the origin",
        "dimensionality": "[n]",
        "type": "complex",
    },
    "condition": {
        "description": "condition number of the eigenvector matrix",
        "dimensionality": "scalar",
        "type": "float",
    },
    "coefficients": {
        "description": "number of coefficients up to the degree",
        "dimensionality": "scalar",
        "type": "int",
    },
    "max_coefficient": {
        "description": "largest coefficient modulus",
        "dimensionality": "scalar",
        "type": "float",
    },
    "residual": {
        "description": "largest coefficient of the PDE residual",
        "dimensionality": "scalar",
        "type": "float",
    },
    "relative_residual": {
        "description": "residual relative to the largest coefficient",
        "dimensionality": "scalar",
        "type": "float",
    },
    "charts": {
        "description": "number of charts in the atlas",
        "dimensionality": "scalar",
        "type": "int",
    },
    "members": {
        "description": "grid points claimed by the atlas",
        "dimensionality": "scalar",
        "type": "int",
    },
}
