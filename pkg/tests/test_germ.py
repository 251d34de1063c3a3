import pytest
from hypothesis import given, strategies as st

from mapgerms import catalog
from mapgerms.germ import (GermSyntaxError, MapGerm, corank, determinacy_power, find_weights,
                           format_germ, germ_from_strings, identity_germ, parse_germ, weighted)
from mapgerms.poly import make_ring
from strategies import R2, polys


def test_parse_full_file():
    text = """
    # comments are ignored
    source: x y
    target: X Y
    map: X = x^3 + x*y; Y = y
    label: cusp
    weights: 1 2
    """
    f = parse_germ("\n".join(ln.strip() for ln in text.splitlines()))
    assert f.dims == (2, 2) and f.label == "cusp"
    assert f.source.weights == (1, 2) and f.target.weights == (3, 2)
    assert format_germ(f) == ("source: x y\ntarget: X Y\nmap: X = x^3 + x*y; Y = y\n"
                              "label: cusp\nweights: 1 2\n")


def test_target_order_and_inferred_source():
    f = parse_germ("target: A B\nmap: B = v; A = u^2 + v*u")
    assert f.target.vars == ("A", "B") and f.source.vars == ("u", "v")
    assert f.components[0] == f.source.parse("u^2 + u*v")


def test_continuation_lines():
    f = parse_germ("source: x y\ntarget: X Y\nmap: X = x^2;\n  Y = y\n")
    assert f.components[1] == f.source.parse("y")


@pytest.mark.parametrize("text", [
    "source: x\ntarget: X\n",                      # no map
    "source: x\ntarget: X Y\nmap: X = x",          # missing component
    "source: x\ntarget: X\nmap: X = x + 1",        # not a germ at 0
    "source: x\ntarget: X\nmap: X = z",            # unknown variable
    "source: x y\ntarget: X\nmap: X = x\nweights: 1",
    "source: x\ntarget: X\nmap: X = x\nweights: a",
    "source: x\nsource: y\nmap: X = x",
    "nonsense",
])
def test_parse_errors(text):
    with pytest.raises(GermSyntaxError):
        parse_germ(text)


def test_catalog_roundtrips_and_corank():
    for name in catalog.GERMS:
        f = catalog.get(name)
        assert parse_germ(format_germ(f)) == f, name
    assert corank(catalog.get("F32")) == 2
    assert corank(catalog.get("cusp")) == 1
    assert corank(identity_germ(["x", "y"])) == 0


def test_weights_found_for_quasihomogeneous():
    f = germ_from_strings(["x", "y"], ["X", "Y"], ["x^3 + y^2", "x*y"])
    w = find_weights(f)
    assert w is not None
    src, tgt = w
    assert list(src) == [2, 3] and list(tgt) == [6, 5]
    assert weighted(f).source.weights == (2, 3)
    assert find_weights(catalog.get("rieger-x5b")) is None


def test_determinacy_power():
    assert determinacy_power(2, 3) == 25
    assert determinacy_power(3, 1, r=2) == 49


def test_catalog_unknown():
    with pytest.raises(KeyError):
        catalog.get("nope")
    assert catalog.get("F33'") == catalog.get("F33prime")


@given(polys(R2, max_deg=4, max_terms=4, min_order=1), polys(R2, max_deg=4, max_terms=4, min_order=1),
       st.sampled_from([None, "g"]))
def test_germ_file_roundtrip(a, b, label):
    f = MapGerm(R2, make_ring(["X", "Y"]), (a, b), label)
    text = format_germ(f)
    g = parse_germ(text)
    assert g == f
    assert format_germ(g) == text
