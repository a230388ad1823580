"""Configure Django for pytest the same way manage.py does for `manage.py test`."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'KTrails.settings')
django.setup()
