"""
Tests pour le module mkdv_lab.
"""
