"""Special-function kernels: reference values, invariants, domain edges."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tll import specfun
from tll._backend import load_backend
from tll.errors import DomainError, OverflowRangeError

# Reference values generated by tests/oracles/gen_specfun_values.py
# (60-digit working precision, correctly rounded to double).
# Keys: z -> (ai, ai_prime, bi, bi_prime).
AIRY_REFERENCE = {
    -50.0: (-0.1618814236123209239152, 0.9689898372767490871365, -0.1371501521288200733796, -1.145361700265477600264),
    -35.5: (-0.09502346205242711805213, 1.254722663598746151418, -0.2106995482233203127800, -0.5676533632105859971145),
    -20.0: (-0.1764061270779846895902, 0.8928628567364712383984, -0.2001393093226513492836, -0.7914290338395364793563),
    -12.25: (-0.2676446988271422982355, 0.4808713684270044543673, -0.1389398495227379398935, -0.9396699868028351683370),
    -9.5: (0.3191032477191282013757, -0.1080953188118712389963, 0.03778543248946650226563, 0.9847140700021197039207),
    -9.0001: (-0.02203615415469135088722, -0.9756838574808899212103, 0.3249530488838595665841, -0.05710805704916819878641),
    -9.0: (-0.02213372154734140367417, -0.9756639809263315947127, 0.3249473234552449179194, -0.05740051384366925439265),
    -8.9999: (-0.02223128694795654841100, -0.9756440167833528526599, 0.3249415687813713768018, -0.05769296222265096578499),
    -8.0: (-0.05270505035638620262208, 0.9355609381983065510255, -0.3312515807511378599699, -0.1594504978129813893499),
    -7.25: (0.3237405732111861462213, -0.3002289950473540814629, 0.1155912610095565660151, 0.8760287141075455260456),
    -6.0: (-0.3291451736298231052314, 0.3459354872813428949298, -0.1466983766705570378753, -0.8128987851050670004247),
    -5.52056: (-1.487324210242233814998e-7, 0.8652040258940813566538, -0.3679015286482569575659, -0.01657158558837191214500),
    -4.08795: (4.464247376930552232830e-7, -0.8031113696543567437275, 0.3963458712277641142531, 0.02393507981762252258528),
    -2.33811: (-0.000001815813637155848206230, 0.7012108227151943247373, -0.4539430829822227145837, -0.04598487027806598420138),
    -1.0: (0.5355608832923521187995, -0.01016056711664520939505, 0.1039973894969446118887, 0.5923756264227923508168),
    -0.5: (0.4757280916105395887986, -0.2040816703395473861448, 0.3803526597510538501697, 0.5059337136238471665703),
    -0.1: (0.3808486681201215132081, -0.2569581123236461744017, 0.5699990430029548579365, 0.4512133622934612424119),
    0.0: (0.3550280538878172392601, -0.2588194037928067984052, 0.6149266274460007351509, 0.4482883573538263579148),
    0.25: (0.2911639543485452062721, -0.2490621120048971418037, 0.7287469039362150078695, 0.4698611937679593565452),
    1.0: (0.1352924163128814155241, -0.1591474412967932127875, 1.207423594952871259436, 0.9324359333927756329595),
    2.0: (0.03492413042327437913532, -0.05309038443365363170400, 3.298094999978214710281, 4.100682049932889889382),
    3.5: (0.002584098786989634963277, -0.005004413967952582832030, 33.05550675461147941426, 59.16431958136098703457),
    5.0: (0.0001083444281360744173499, -0.0002474138908684624760002, 657.7920441711711824411, 1435.819080217982518672),
    6.0: (0.000009947694360252889570239, -0.00002476520039703495475418, 6536.446104809863453758, 15725.60262193047683942),
    7.5: (1.917256067513430751645e-7, -5.312713959720544684790e-7, 303229.6151125334022938, 819987.8353587996209321),
    8.9999: (2.471916606224843255654e-9, -7.482865765550616229912e-9, 21466489.10863709098509, 63788167.17729622352538),
    9.0: (2.471168430872489843289e-9, -7.480641389658946412760e-9, 21472868.89143534909337, 63807489.78090821385451),
    9.0001: (2.470420477925296751773e-9, -7.478417662313321661247e-9, 21479250.60679182297946, 63826818.34192302286389),
    10.0: (1.104753255289868593355e-10, -3.520633676738923636621e-10, 455641153.5482251409998, 1429236134.482865776119),
    12.0: (1.393184688875360839049e-13, -4.854736554985308462994e-13, 329807225829.0741761848, 1135507502443.370742404),
    16.0: (4.156888828917024394748e-20, -1.669188676838180955916e-19, 957212390604918652.5844, 3813743507121862655.877),
    20.0: (1.691672868670540313554e-27, -7.586391625748354960515e-27, 2.103765049651103814495e+25, 9.381839336133964349106e+25),
    50.0: (4.584941724074828478348e-104, -3.244331819828799296131e-103, 4.909099699444219328776e+101, 3.468798779545976724372e+102),
    100.0: (2.634482152088184489551e-291, -2.635140361604409933603e-290, 6.041223996670201399005e+288, 6.039712745310602909362e+289),
    103.0: (1.956232022933922380730e-304, -1.985833197807815015479e-303, 8.016433929024869958305e+301, 8.133844967032322200379e+302),
}

# Same script; x -> E1(x).
E1_REFERENCE = {
    1e-08: 17.84346508905083256561,
    0.0001: 8.633224704574705382062,
    0.01: 4.037929576538113811177,
    0.05: 2.467898488509974316756,
    0.06283185307179587: 2.251935967145799330374,
    0.25: 1.044282634443738194536,
    0.5: 0.5597735947761608117468,
    0.9999: 0.2194207260187384162996,
    1.0: 0.2193839343955202736772,
    1.0001: 0.2193471501298910035326,
    1.5: 0.1000195824066326519019,
    2.0: 0.04890051070806111956724,
    5.0: 0.001148295591275325797331,
    10.0: 0.000004156968929685324277403,
    30.0: 3.021552010688812544816e-15,
    100.0: 3.683597761682032180235e-46,
    500.0: 1.422076782253638422098e-220,
    700.0: 1.406518766234032922774e-307,
}


def _backends():
    names = ["pure"]
    try:
        load_backend("compiled")
        names.append("compiled")
    except ImportError:
        pass
    return names


@pytest.fixture(params=_backends())
def backend(request):
    return load_backend(request.param)


@pytest.mark.parametrize("z", sorted(AIRY_REFERENCE))
def test_airy_reference_values(backend, z):
    want = AIRY_REFERENCE[z]
    got = backend.airy_kernel(z)
    for g, w in zip(got, want):
        assert g == pytest.approx(w, rel=5e-14)


@pytest.mark.parametrize("x", sorted(E1_REFERENCE))
def test_e1_reference_values(backend, x):
    assert backend.e1_kernel(x) == pytest.approx(E1_REFERENCE[x], rel=1e-13)


def test_airy_quad_interface():
    q = specfun.airy(0.0)
    assert q.ai == pytest.approx(AIRY_REFERENCE[0.0][0], rel=1e-15)
    assert q.bi_prime == pytest.approx(AIRY_REFERENCE[0.0][3], rel=1e-15)
    assert abs(q.wronskian_defect()) < 1e-14
    assert q.wronskian() == pytest.approx(1.0 / math.pi, rel=1e-14)


def test_airy_grid_matches_pointwise():
    z = np.array([-30.0, -2.5, 0.0, 1.5, 25.0])
    grid = specfun.airy_grid(z)
    assert grid.shape == (5, 4)
    for i, zi in enumerate(z):
        q = specfun.airy(zi)
        assert grid[i, 0] == q.ai
        assert grid[i, 1] == q.ai_prime
        assert grid[i, 2] == q.bi
        assert grid[i, 3] == q.bi_prime


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-50.0, max_value=20.0))
def test_wronskian_identity(z):
    q = specfun.airy(z)
    assert abs(q.wronskian_defect()) < 1e-10


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-30.0, max_value=8.0))
def test_airy_satisfies_its_equation(z):
    # second difference of Ai against z * Ai(z)
    h = 1e-5
    qm = specfun.airy(z - h)
    q0 = specfun.airy(z)
    qp = specfun.airy(z + h)
    second = (qp.ai - 2.0 * q0.ai + qm.ai) / (h * h)
    scale = max(abs(z * q0.ai), 1.0)
    assert second == pytest.approx(z * q0.ai, abs=1e-5 * scale)
    second_bi = (qp.bi - 2.0 * q0.bi + qm.bi) / (h * h)
    scale_bi = max(abs(z * q0.bi), 1.0)
    assert second_bi == pytest.approx(z * q0.bi, abs=1e-5 * scale_bi)


@pytest.mark.parametrize("side", [-9.0, 9.0])
def test_series_asymptotic_seam_is_smooth(backend, side):
    # neighboring evaluations straddling the representation switch stay
    # consistent to near machine precision
    eps = 1e-7
    lo = backend.airy_kernel(side - eps)
    hi = backend.airy_kernel(side + eps)
    mid = backend.airy_kernel(side)
    for a, m, b in zip(lo, mid, hi):
        # linear interpolation across 2*eps; curvature term is ~1e-13
        assert m == pytest.approx(0.5 * (a + b), rel=1e-10, abs=1e-18)


def test_airy_domain_errors(backend):
    with pytest.raises(DomainError):
        backend.airy_kernel(math.nan)
    with pytest.raises(DomainError):
        backend.airy_kernel(1.5e4)
    with pytest.raises(DomainError):
        backend.airy_kernel(-1.5e4)


def test_bi_overflow_reports_exponent(backend):
    with pytest.raises(OverflowRangeError) as info:
        backend.airy_kernel(110.0)
    assert info.value.exponent10 > 300


def test_gamma0_reference_values():
    assert specfun.gamma0(2.0 * math.pi / 100.0) == pytest.approx(
        2.251935967145799376734, rel=1e-13
    )
    assert specfun.gamma0(1.0) == pytest.approx(
        0.2193839343955202736772, rel=1e-13
    )


def test_gamma0_bounds_and_monotonicity():
    xs = np.geomspace(1e-6, 50.0, 200)
    vals = [specfun.gamma0(x) for x in xs]
    assert all(v > 0.0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))
    for x in (0.5, 1.0, 5.0, 20.0):
        assert specfun.gamma0(x) < math.exp(-x) / x


def test_gamma0_domain():
    with pytest.raises(DomainError):
        specfun.gamma0(0.0)
    with pytest.raises(DomainError):
        specfun.gamma0(-1.0)
