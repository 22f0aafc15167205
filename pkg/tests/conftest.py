import pytest

from resrec.resistance import ResistanceModel


def cofactor_det(m):
    """Plain Laplace expansion; independent of the Bareiss code path."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j, v in enumerate(m[0]):
        if v:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * v * cofactor_det(minor)
    return total


@pytest.fixture(scope="session")
def model3():
    return ResistanceModel(3, precision=50)


@pytest.fixture(scope="session")
def model1():
    return ResistanceModel(1, precision=50)
