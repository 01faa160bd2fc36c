"""Error paths and edge behavior across modules."""

import json
from fractions import Fraction

import pytest

from grassconf.errors import (
    MixedAmbientError,
    NotComplementaryError,
    OutsideChartError,
)
from grassconf.fibrations import (
    ChartPoint,
    Trivialization,
    chart_point,
    eta_fiber_lift,
    eta_fiber_point,
    extend_isomorphism,
    gamma_trivialize,
    gamma_untrivialize,
    pr_trivialize,
    pr_untrivialize,
)
from grassconf.grassmann import (
    Configuration,
    StratumId,
    canonicalize,
    complement,
    projection_along,
    sample_configuration,
    sample_subspace,
    subspace_sum,
)
from grassconf.homotopy import PiQuery, derive, free_abelian, group_from_json
from grassconf.linalg import (
    GaussianRational,
    Matrix,
    gq,
    matrix_from_json,
    matrix_to_json,
)


def unit_rows(n, *idx):
    return Matrix.from_rows([[1 if j == i else 0 for j in range(n)] for i in idx])


# --- linalg -------------------------------------------------------------------


def test_scalar_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        gq(1) / gq(0)


def test_scalar_renderings():
    assert str(gq(0)) == "0"
    assert str(gq(Fraction(3, 2))) == "3/2"
    assert str(gq(0, 1)) == "i"
    assert str(gq(0, -1)) == "-i"
    assert str(gq(1, Fraction(-1, 3))) == "1-1/3i"
    assert str(gq(Fraction(1, 2), 2)) == "1/2+2i"


def test_matrix_shape_errors():
    a = Matrix.zeros(2, 3)
    with pytest.raises(ValueError):
        a + Matrix.zeros(3, 2)
    with pytest.raises(ValueError):
        a @ Matrix.zeros(2, 2)
    with pytest.raises(ValueError):
        Matrix.from_rows([])
    with pytest.raises(ValueError):
        Matrix(2, 2, ((gq(1),),))


def test_matrix_json_entry_count_checked():
    data = matrix_to_json(Matrix.zeros(2, 2))
    data["entries"] = data["entries"][:-1]
    with pytest.raises(ValueError):
        matrix_from_json(data)


# --- grassmann ----------------------------------------------------------------


def test_subspace_rejects_non_canonical_basis():
    from grassconf.grassmann import Subspace

    with pytest.raises(ValueError):
        Subspace(3, 1, Matrix.from_rows([[2, 0, 0]]))
    with pytest.raises(ValueError):
        Subspace(3, 2, Matrix.from_rows([[0, 1, 0], [1, 0, 0]]))


def test_stratum_id_validation():
    with pytest.raises(ValueError):
        StratumId(2, 3, 0, 4)
    with pytest.raises(ValueError):
        StratumId(2, 3, 4, 4)
    with pytest.raises(ValueError):
        StratumId(0, 2, 1, 3)


def test_canonicalize_wrong_ambient():
    with pytest.raises(MixedAmbientError):
        canonicalize(Matrix.from_rows([[1, 0]]), 3)


def test_projection_mixed_ambient():
    a = sample_subspace(1, 3, 0)
    b = sample_subspace(2, 4, 0)
    with pytest.raises(MixedAmbientError):
        projection_along(a, b)


def test_sample_subspace_deterministic():
    assert sample_subspace(2, 5, 7) == sample_subspace(2, 5, 7)
    assert sample_subspace(2, 5, 7) != sample_subspace(2, 5, 8)


# --- fibrations ---------------------------------------------------------------


def test_trivialization_rejects_non_complementary_pair():
    v0 = canonicalize(unit_rows(4, 0, 1), 4)
    bad = canonicalize(unit_rows(4, 1, 2), 4)
    with pytest.raises(NotComplementaryError):
        Trivialization.over(v0, bad)


def test_extend_isomorphism_dimension_mismatch():
    triv = Trivialization.over(canonicalize(unit_rows(4, 0, 1), 4))
    line = canonicalize(unit_rows(4, 2), 4)
    with pytest.raises(OutsideChartError):
        extend_isomorphism(line, triv)


def test_gamma_untrivialize_rejects_fiber_outside_base_point():
    c = sample_configuration(StratumId(2, 3, 2, 5), 0)
    total = subspace_sum(c.points)
    triv = Trivialization.over(total)
    point = gamma_trivialize(c, triv)
    stray = sample_configuration(StratumId(2, 4, 2, 5), 1)
    with pytest.raises(OutsideChartError):
        gamma_untrivialize(ChartPoint(base=point.base, fiber=stray), triv)


def test_gamma_untrivialize_type_checks():
    c = sample_configuration(StratumId(2, 3, 2, 5), 0)
    triv = Trivialization.over(subspace_sum(c.points))
    with pytest.raises(TypeError):
        gamma_untrivialize(ChartPoint(base=c, fiber=c), triv)


def test_pr_untrivialize_rejects_fiber_meeting_base_point():
    pts = tuple(canonicalize(unit_rows(6, 2 * j, 2 * j + 1), 6) for j in range(3))
    c = Configuration(3, 2, 6, pts)
    v0 = subspace_sum(pts[:2])
    triv = Trivialization.over(v0)
    point = pr_trivialize(c, triv)
    bad = ChartPoint(base=point.base, fiber=canonicalize(unit_rows(6, 0, 1), 6))
    with pytest.raises(OutsideChartError):
        pr_untrivialize(bad, triv)


def test_eta_fiber_lift_validates_quotient_pair():
    h1 = canonicalize(unit_rows(4, 0, 1), 4)
    h2 = canonicalize(unit_rows(4, 0, 2), 4)
    c = Configuration(2, 2, 4, (h1, h2))
    v0 = canonicalize(unit_rows(4, 0), 4)
    triv = Trivialization.over(v0)
    point = eta_fiber_point(c, triv)
    outside = canonicalize(unit_rows(4, 0), 4)  # lies in V0, not in L0
    with pytest.raises(OutsideChartError):
        eta_fiber_lift(ChartPoint(base=point.base, fiber=(outside, point.fiber[1])), triv)
    first = point.fiber[0]
    with pytest.raises(OutsideChartError):
        eta_fiber_lift(ChartPoint(base=point.base, fiber=(first, first)), triv)


def test_chart_point_shape_validation():
    w = canonicalize(unit_rows(5, 0, 1, 2), 5)
    with pytest.raises(ValueError):
        chart_point(Matrix.zeros(2, 2), w)


# --- homotopy -----------------------------------------------------------------


def test_free_abelian_guards():
    with pytest.raises(ValueError):
        free_abelian(-1)
    from grassconf.homotopy import FreeAbelian

    with pytest.raises(ValueError):
        FreeAbelian(0)


def test_group_json_unknown_variant():
    with pytest.raises(ValueError):
        group_from_json({"variant": "Banana"})


def test_pi_query_json_round_trip():
    q = PiQuery(2, 3, 6, 2, 9)
    assert group_from_json(q.to_json()) == q


def test_derive_empty_stratum():
    from grassconf.errors import EmptyStratumError

    with pytest.raises(EmptyStratumError):
        derive(StratumId(2, 2, 2, 5), 1)


def test_stiefel_grassmann_param_validation():
    from grassconf.homotopy import grassmann_pi, stiefel_pi

    with pytest.raises(ValueError):
        stiefel_pi(1, 0, 3)
    with pytest.raises(ValueError):
        stiefel_pi(1, 4, 3)
    with pytest.raises(ValueError):
        grassmann_pi(2, 3, 3)


# --- verify -------------------------------------------------------------------


def test_verify_parameter_validation():
    from grassconf.verify import check_adjacency, check_dimension, run_roundtrip_suite

    with pytest.raises(ValueError):
        check_dimension(StratumId(2, 3, 2, 4), tol=0.0)
    c = sample_configuration(StratumId(2, 3, 2, 4), 0)
    with pytest.raises(ValueError):
        check_adjacency(c, 4, Fraction(0))
    with pytest.raises(ValueError):
        run_roundtrip_suite("moebius")
    with pytest.raises(ValueError):
        run_roundtrip_suite("gamma", grid={"h": 2})


# --- cli ----------------------------------------------------------------------


def test_cli_pi_text_trace(capsys):
    import io

    from grassconf.cli import main

    out = io.StringIO()
    code = main(
        ["pi", "--order", "2", "--h", "2", "--i", "4", "--k", "2", "--n", "4", "--trace"],
        out=out,
    )
    assert code == 0
    lines = out.getvalue().splitlines()
    assert lines[0] == "query: pi_2(F_2^4(2,4))"
    assert lines[-1] == "answer: Z"
    assert any("pr-equality" in line for line in lines)


def test_cli_sample_stdout_parses():
    import io

    from grassconf.cli import main

    out = io.StringIO()
    code = main(["sample", "--h", "2", "--i", "3", "--k", "2", "--n", "4", "--seed", "1"], out=out)
    assert code == 0
    data = json.loads(out.getvalue())
    assert data["h"] == 2 and len(data["points"]) == 2


def test_cli_order_choice_rejected():
    from grassconf.cli import main

    with pytest.raises(SystemExit) as exc:
        main(["pi", "--order", "3", "--h", "2", "--i", "4", "--k", "2", "--n", "4"])
    assert exc.value.code == 2


def test_cli_classify_json(tmp_path):
    import io

    from grassconf.cli import main

    target = tmp_path / "c.json"
    main(["sample", "--h", "2", "--i", "3", "--k", "2", "--n", "4", "--seed", "3",
          "-o", str(target)])
    out = io.StringIO()
    code = main(["classify", str(target), "--json"], out=out)
    assert code == 0
    assert json.loads(out.getvalue()) == {"h": 2, "i": 3, "k": 2, "n": 4}


def test_cli_verify_missing_flags_exit_2():
    import io

    from grassconf.cli import main

    code = main(["verify", "--suite", "dimension"], out=io.StringIO())
    assert code == 2
