"""Configure Django for pytest, mirroring ``manage.py test``."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'complete_intersections.settings')
django.setup()
