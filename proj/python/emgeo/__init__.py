"""Geocoding and spatial analysis toolkit for EM-DAT disaster exports.

The compiled core exposes the full workflow: read an export, split each
disaster into disaster-location pairs, geocode the location words through
GeoNames (or a recorded fixture store), report coverage, and run bounding
box / polygon membership tests.
"""

from ._emgeo import *  # noqa: F401,F403
from ._emgeo import __version__  # noqa: F401
