import pytest

from shrinkca.shrinking import ShrinkingGeneratorConfig

EX1 = ("1+x+x^2", "11", "1+x+x^3", "111")
EX3 = ("1+x+x^3", "100", "1+x+x^4", "1000")
EX4_P1, EX4_P2, EX4_P = "1+x+x^3+x^4+x^6", "1+x^3+x^7", "1+x^4+x^7"
EX4_S = "1000010000"

EX1_SHRUNKEN = "11000110101101"
EX3_SHRUNKEN = "100011111010000110010110110011010100001011100011011101011011"

TABLE1 = (
    "10101100011101",
    "11110100100110",
    "00011101101011",
    "00100110111101",
    "01101011000111",
    "10111101001001",
    "11000111011010",
    "01001001101111",
    "11011010110001",
    "01101111010010",
    "10110001110110",
    "11010010011011",
    "01110110101100",
    "10011011110100",
)

EX4_MATRIX = (
    (0, 1), (12, 1), (23, 0), (24, 1), (25, 1), (32, 0), (38, 1), (40, 0), (41, 0),
    (43, 1), (45, 1), (47, 0), (48, 1), (49, 0), (50, 1), (52, 1), (53, 1), (54, 1),
    (55, 0), (56, 1), (59, 0), (60, 1), (64, 0), (66, 0), (68, 1), (78, 1), (79, 0),
    (87, 0), (91, 0), (95, 0), (98, 0), (99, 1), (101, 0), (103, 0), (105, 1), (107, 0),
    (108, 1), (109, 0), (110, 0), (111, 0), (112, 1), (114, 0), (115, 0), (117, 0),
    (118, 0), (119, 0),
)


@pytest.fixture
def ex1():
    return ShrinkingGeneratorConfig.from_text(*EX1)


@pytest.fixture
def ex3():
    return ShrinkingGeneratorConfig.from_text(*EX3)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
