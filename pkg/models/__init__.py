# models/__init__.py
# package init