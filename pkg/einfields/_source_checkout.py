#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Import hook for editable installs.

`setup.py` maps `tools/` and `exps/default/` into the package through `package_dir`,
which an in-place install ignores. In a source checkout the two directories are
served to the import system directly instead.
"""

import sys
from importlib import abc, util
from pathlib import Path

__all__ = ["REPO_ROOT", "serve_directory"]

REPO_ROOT = Path(__file__).resolve().parent.parent


class _DirectoryFinder(abc.MetaPathFinder):
    """Resolve `<package>.<name>` to `<directory>/<name>.py`."""

    def __init__(self, package, directory):
        self.prefix = package + "."
        self.directory = directory

    def find_spec(self, name, path, target=None):
        if not name.startswith(self.prefix):
            return None
        module_file = self.directory / (name[len(self.prefix):] + ".py")
        if "." in name[len(self.prefix):] or not module_file.is_file():
            return None
        return util.spec_from_file_location(name, module_file)


def serve_directory(package, relative_dir):
    """Register a finder for `package` unless the directory is absent or already served."""
    directory = REPO_ROOT / relative_dir
    if not directory.is_dir():
        return False
    for finder in sys.meta_path:
        if isinstance(finder, _DirectoryFinder) and finder.prefix == package + ".":
            return True
    sys.meta_path.append(_DirectoryFinder(package, directory))
    return True
