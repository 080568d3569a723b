# cli/__init__.py
# package init