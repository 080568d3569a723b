# utils/__init__.py
# package init