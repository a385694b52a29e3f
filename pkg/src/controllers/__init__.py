# src/controllers/__init__.py
