"""
WSGI config for the boundary_qbm project.

It exposes the WSGI callable as a module-level variable named ``application``.
Only the read-only evaluation API is served; the numerical work happens in
the ``dispersion`` app.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'boundary_qbm.settings')

application = get_wsgi_application()
