"""Versal deformation data of toric singularities in degree -R."""
