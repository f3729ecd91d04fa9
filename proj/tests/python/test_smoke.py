import pytest

import pcsp


def test_menu_solve():
    problem = pcsp.builtin_menu()
    result = pcsp.solve(problem, all_best=True)
    assert result["status"] == "OPTIMAL"
    assert result["consistency"] == 0.8
    assert {
        "drink": "white-wine",
        "entrance": "foie-gras",
        "dish": "fish",
        "dessert": "apple-pie",
    } in result["labelings"]


def test_round_trip():
    problem = pcsp.builtin_menu()
    text = pcsp.write_problem(problem)
    again = pcsp.parse_problem(text)
    assert pcsp.write_problem(again) == text
    assert again.variables == problem.variables


def test_parse_error_reports_line():
    with pytest.raises(pcsp.PcspError, match="line 2"):
        pcsp.parse_problem("problem p\nvar x :\n")


def test_pi_star_matches_solve():
    problem = pcsp.builtin_menu()
    result = pcsp.solve(problem)
    assert pcsp.pi_star(problem, result["labelings"][0]) == result["consistency"]


def test_enforce_ac():
    result = pcsp.enforce_ac(pcsp.builtin_menu())
    assert result["delta"] == 0.8
    assert result["arc_consistent"]
    assert {"variable": "drink", "label": "white-wine", "necessity": 0.2} in result[
        "inferences"
    ]


def test_oracle_agrees_with_search():
    problem = pcsp.random_problem(
        seed=7,
        n_vars=4,
        domain_size=3,
        n_constraints=5,
        max_arity=2,
        tightness=0.4,
        necessity_levels=[0.2, 0.5, 1.0],
    )
    best = pcsp.enumerate_best(problem)
    result = pcsp.solve(problem, all_best=True)
    assert best["consistency"] == result["consistency"]

    def as_set(labelings):
        return {tuple(sorted(l.items())) for l in labelings}

    assert as_set(best["labelings"]) == as_set(result["labelings"])


def test_forward_check():
    problem = pcsp.builtin_menu()
    table = pcsp.forward_check(
        problem, {"dish": "sauerkraut"}, ["drink", "entrance", "dessert"]
    )
    assert table["drink"]["red-wine"] == pytest.approx(0.2)
