# tests/__init__.py
# package init