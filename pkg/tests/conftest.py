from __future__ import annotations

import pytest

from cubicbrauer.cubiclattice import reference_trio, weyl_group
from cubicbrauer.perms import setwise_stabilizer, subgroup_classes


@pytest.fixture(scope="session")
def trio_stabilizer():
    return setwise_stabilizer(weyl_group(), set(reference_trio().indices))


@pytest.fixture(scope="session")
def stabilizer_classes(trio_stabilizer):
    return subgroup_classes(trio_stabilizer)
