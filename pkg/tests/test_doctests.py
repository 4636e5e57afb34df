import doctest
import importlib
import pkgutil

import pytest

import varlp

MODULES = sorted(m.name for m in pkgutil.iter_modules(varlp.__path__)
                 if m.name != '__main__')


@pytest.mark.parametrize('name', MODULES)
def test_module_doctests(name):
    mod = importlib.import_module(f'varlp.{name}')
    result = doctest.testmod(mod, optionflags=doctest.ELLIPSIS)
    assert result.failed == 0
