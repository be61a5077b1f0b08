#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pytest

from core.dependency_checker import DependencyChecker
from core.errors import DependencyError


def test_required_packages_are_found():
    checker = DependencyChecker()
    assert checker.check_all_dependencies()
    report = checker.get_dependency_report()
    assert list(report) == sorted(["numpy", "scipy", "PySide6", "psutil"])


def test_missing_package_raises():
    checker = DependencyChecker()
    checker.required_python_packages["ghost"] = "paquete_que_no_existe_cqlab"
    with pytest.raises(DependencyError):
        checker.check_all_dependencies()
