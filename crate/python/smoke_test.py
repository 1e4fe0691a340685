"""Smoke test for the mvpoly Python bindings.

Build first:  pip install -e crates/mvpoly-py --no-build-isolation
"""

import json

import mvpoly


def main():
    right = mvpoly.LusztigDatum([2, 1, 1], [9, 2, 1, 1], [1, 0, 1])
    left = mvpoly.right_to_left(right)
    assert left.a == [1, 2, 1, 1], left
    assert left.partition == [2, 1, 1]
    assert left.a_up == [5, 1, 0, 1]
    assert mvpoly.left_to_right(left) == right

    zero = mvpoly.CrystalElement.zero()
    assert zero.f(0) is None and zero.f(1) is None
    b = zero.apply("e1,e1,e0")
    assert b.weight() == ("1", "2"), b.weight()
    assert b.f(0).f(1).f(1) == zero
    assert b.star().star() == b
    assert b.is_mv()
    assert zero.apply("f0") is None

    elems = mvpoly.enumerate(2)
    assert len(elems) == 7
    assert mvpoly.crystal_graph_dot(2).startswith("digraph")

    summary = json.loads(mvpoly.CrystalElement(right).summary())
    assert summary["left"]["a_up"][0] == 5

    t = mvpoly.CrystalElement(mvpoly.LusztigDatum(a=[1], system="twisted"))
    assert t.left.system == "twisted" and t.is_mv()

    for suite in ("ks", "phi", "blambda", "a22"):
        for line in mvpoly.run_suite(suite, 3):
            assert json.loads(line)["status"] == "pass", line

    assert "<svg" in mvpoly.CrystalElement(right).render("svg")
    print("smoke test ok")


if __name__ == "__main__":
    main()
