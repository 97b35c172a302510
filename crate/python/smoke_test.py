"""Smoke test for the pyakzeta extension module.

Build and install first, e.g. `maturin build --release -m crates/python/Cargo.toml`
followed by `pip install` of the produced wheel.
"""

import math

import pyakzeta as az


def main():
    k = az.Index("(1,2)")
    assert k.dual() == az.Index("(3)")
    assert az.Index([2, 1]).hoffman_dual() == az.Index("(1,2)")
    assert k.blocks() == [(2, 1)]
    assert k.word() == "110"
    assert len(az.indices_of_weight(4, False)) == 8

    assert az.shuffle("1", "1") == {"11": "2/1"}
    assert az.word_dual("110") == "100"

    ev = az.Evaluator(128)
    z3 = ev.zeta(az.Index("(3)"))
    assert abs(float(z3) - 1.2020569031595942) < 1e-15 and z3.radius < 1e-35
    assert abs(float(ev.xi(az.Index("(1)"), 2)) - 2.4041138063191885) < 1e-15
    assert abs(float(ev.li(az.Index("(2)"), "0.5")) - 0.5822405264650125) < 1e-15
    assert abs(float(ev.t(az.Index("(2)"))) - math.pi**2 / 4) < 1e-15

    x = az.Poset.xi(az.Index("(1)"), 2)
    assert abs(float(ev.poset_integral(x)) - 2.4041138063191885) < 1e-15
    chain = az.Poset([1, 0], [(0, 1)])
    assert chain.w_map() == {"10": "1/1"}
    assert az.Poset.from_json(chain.to_json()).w_map() == chain.w_map()

    assert "thm-main2" in az.identities()
    report = az.verify("thm-main2", {"k": "(1,2)"}, ev)
    assert report["pass"] and len(report["points"]) == 5, report
    report = az.verify("cor-main", {"k": "(2)", "m": 1}, ev)
    assert report["pass"] and report["points"][0]["lhs"].startswith("2.705808084277845"), report

    try:
        az.verify("thm-main2", {"k": "(2)"}, ev, z_grid="0.99")
    except ValueError:
        pass
    else:
        raise AssertionError("z = 0.99 should be rejected")

    suite = az.run_suite("combinatorics", ev, max_weight=6)
    assert suite["pass"], suite
    print("smoke test passed")


if __name__ == "__main__":
    main()
