"""
Services package initialization

Subpackages are imported explicitly (app.services.problems, app.services.npdc, ...)
so that importing one optimizer does not pull in the others.
"""
