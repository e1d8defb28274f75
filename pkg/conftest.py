import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'InterpolEEZ.settings')
django.setup()
