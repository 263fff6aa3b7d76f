"""Built-in space presentations, validation, and the config loader."""

from fractions import Fraction
from importlib import resources

import pytest

from eqlink import (
    PolyParseError,
    PresentationError,
    TotalChernClass,
    builtin_space,
    chern_number,
    even_quadric,
    grassmannian,
    load_presentation,
    odd_quadric,
    projective_space,
    validate_presentation,
)


def _top_cycle(space):
    (cycle,) = space.cycles_of_dim(space.dim_X)
    return cycle


def _euler_characteristic(space):
    tangent = TotalChernClass(
        space.borel_ring.ring, space.dim_X, list(space.cotangent_chern)
    ).dual()
    return chern_number(space, tangent, _top_cycle(space))


# -- validation battery --------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 5))
def test_projective_space_validates(n):
    assert validate_presentation(projective_space(n)) == []


@pytest.mark.parametrize("n", (1, 2))
def test_odd_quadric_validates(n):
    assert validate_presentation(odd_quadric(n)) == []


@pytest.mark.parametrize("n", (1, 2, 3))
def test_even_quadric_validates(n):
    assert validate_presentation(even_quadric(n)) == []


@pytest.mark.parametrize(("k", "n"), ((2, 4), (2, 5)))
def test_grassmannian_validates(k, n):
    assert validate_presentation(grassmannian(k, n)) == []


# -- global sanity: Euler characteristics ---------------------------------------


@pytest.mark.parametrize(
    ("space", "expected"),
    [
        (projective_space(1), 2),
        (projective_space(2), 3),
        (projective_space(3), 4),
        (odd_quadric(1), 4),
        (odd_quadric(2), 6),
        (even_quadric(1), 4),
        (even_quadric(2), 6),
        (grassmannian(2, 4), 6),
        (grassmannian(2, 5), 10),
    ],
    ids=lambda arg: arg.name if hasattr(arg, "name") else str(arg),
)
def test_euler_characteristic(space, expected):
    assert _euler_characteristic(space) == expected


# -- structure -------------------------------------------------------------------


def test_projective_cycles_and_pairing(p3):
    assert [c.name for c in p3.homology_basis] == ["P_0", "P_1", "P_2", "P_3"]
    for cycle in p3.homology_basis:
        # <pd(P_k) * h^k> = 1: each cycle meets a complementary plane once
        h = p3.x_ring.ring.gen(p3.x_ring.ring.names[0])
        assert p3.integrate(cycle.pd_class * h**cycle.complex_dim) == 1


def test_quadric_integration_doubles(q3):
    h = q3.x_ring.ring.gen("h")
    assert q3.integrate(h**3) == 2


def test_even_quadric_half_cycles(q4):
    names = [c.name for c in q4.homology_basis]
    assert "W_1" in names and "W_2" in names
    assert "Z_2" not in names  # the middle dimension is spanned by W_1, W_2
    w1 = q4.cycle("W_1")
    w2 = q4.cycle("W_2")
    assert w1.complex_dim == w2.complex_dim == 2


def test_grassmannian_line_case_is_projective():
    space = grassmannian(1, 4)
    assert space.family == "projective"
    assert space.dim_X == 3


def test_grassmannian_schubert_anchor(gr24):
    # the full box has a single standard tableau-free dual: <pd(point)*1> = 1
    point = gr24.cycles_of_dim(0)[0]
    assert gr24.integrate(point.pd_class) == 1


def test_builtin_space_is_cached():
    assert builtin_space("pn", n=3) is builtin_space("pn", n=3)


def test_with_order_switches_order(p2):
    lex = p2.with_order("lex")
    assert lex.order_name == "lex"
    assert p2.order_name == "grevlex"
    assert lex.content_hash() == p2.content_hash()


def test_content_hash_separates_spaces(p2, p3):
    assert p2.content_hash() != p3.content_hash()


def test_bundle_instances(p2):
    bundle = p2.bundle("O")
    assert bundle.parameters == ("d",)
    assert bundle.instance_name({"d": 3}) == "O(3)"
    assert bundle.one_jet_spanned(d=1)
    assert bundle.c1(p2.borel_ring.ring, d=2) == p2.borel_ring.ring.parse("2*b1")


def test_quadric_jet_condition(q3):
    bundle = q3.bundle("O")
    assert not bundle.one_jet_spanned(d=1)
    assert bundle.one_jet_spanned(d=2)


def test_unknown_cycle_raises(p2):
    with pytest.raises(KeyError):
        p2.cycle("P_9")


def test_family_size_guards():
    with pytest.raises(ValueError):
        projective_space(0)
    with pytest.raises(ValueError):
        even_quadric(0)
    with pytest.raises(ValueError):
        grassmannian(3, 3)


# -- config loader ----------------------------------------------------------------


def _data_path(name):
    return resources.files("eqlink") / "data" / name


def test_bundled_so_configs_load_and_validate():
    for name, quadric in (("so_proj3.toml", even_quadric(1)), ("so_proj4.toml", odd_quadric(1))):
        with resources.as_file(_data_path(name)) as path:
            space = load_presentation(path)
        assert validate_presentation(space) == []
        # shares the symmetry group's characteristic-class ring with the
        # matching invariant quadric, which the transfer check requires
        assert space.group.bg_ring.ring.names == quadric.group.bg_ring.ring.names
        assert space.dim_X == quadric.dim_X + 1


def test_loaded_so_proj3_euler_characteristic():
    with resources.as_file(_data_path("so_proj3.toml")) as path:
        space = load_presentation(path)
    assert _euler_characteristic(space) == 4


GOOD_CONFIG = """
name = "CustomP1"
dim = 1
cotangent = ["1", "-2*b1"]

[group]
name = "SL(2)"
generators = [["c2", 4]]

[borel]
generators = [["b1", 2]]
relations = []

[xring]
generators = [["h", 2]]
relations = ["h^2"]

[beta]
c2 = "-b1^2"

[alpha]
b1 = "h"

[integrate]
"h" = "1"

[[cycles]]
name = "P_0"
dim = 0
pd = "h"

[[cycles]]
name = "P_1"
dim = 1
pd = "1"

[[bundles]]
name = "O"
c1 = "d*b1"
params = ["d"]
jet = "d >= 1"
"""


def test_load_custom_config(tmp_path):
    path = tmp_path / "p1.toml"
    path.write_text(GOOD_CONFIG)
    space = load_presentation(path)
    assert space.name == "CustomP1"
    assert validate_presentation(space) == []
    assert _euler_characteristic(space) == 2


def test_load_rejects_bad_polynomial(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text(GOOD_CONFIG.replace('c2 = "-b1^2"', 'c2 = "-b1^^2"'))
    with pytest.raises(PresentationError) as exc_info:
        load_presentation(path)
    causes = []
    err = exc_info.value
    while err is not None:
        causes.append(type(err))
        err = err.__cause__
    assert PolyParseError in causes


def test_load_rejects_missing_section(tmp_path):
    path = tmp_path / "missing.toml"
    path.write_text(GOOD_CONFIG.replace("[alpha]\nb1 = \"h\"\n", ""))
    with pytest.raises(PresentationError):
        load_presentation(path)


def test_load_rejects_degree_breaking_map(tmp_path):
    path = tmp_path / "degree.toml"
    path.write_text(GOOD_CONFIG.replace('c2 = "-b1^2"', 'c2 = "b1"'))
    with pytest.raises(PresentationError) as exc_info:
        load_presentation(path)
    assert exc_info.value.violations


def test_load_rejects_inconsistent_integral(tmp_path):
    path = tmp_path / "integral.toml"
    text = GOOD_CONFIG.replace('"h" = "1"', '"h" = "1"\n"h^0" = "7"')
    path.write_text(text)
    with pytest.raises(PresentationError):
        load_presentation(path)
