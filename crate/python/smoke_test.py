"""Smoke test for the gradalg extension module.

Build first with `cargo build -p gradalg-python --release`. The shared
library is copied next to a temporary path as `gradalg.so` and imported.
"""

import importlib.util
import json
import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
KLEIN = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 1], [0, 1, 0, 1]]


def load():
    lib = os.environ.get("GRADALG_LIB", os.path.join(ROOT, "target", "release", "libgradalg_py.so"))
    tmp = tempfile.mkdtemp()
    dest = os.path.join(tmp, "gradalg.so")
    shutil.copy(lib, dest)
    spec = importlib.util.spec_from_file_location("gradalg", dest)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    g = load()

    v4 = g.Group("C2xC2")
    assert v4.order == 4 and v4.is_abelian()
    assert len(v4.subgroups()) == 5
    assert json.loads(v4.h2())["order"] == 2
    assert json.loads(g.Group("Q8").h2())["order"] == 1

    sigma = g.Cocycle.from_json(json.dumps({"group": "C2xC2", "modulus": 2, "exponents": KLEIN}))
    assert sigma.is_cocycle() and sigma.order() == 2
    trivial = g.Cocycle.from_json(json.dumps({"group": "C2xC2", "modulus": 2, "exponents": [[0] * 4] * 4}))
    assert not sigma.equivalent(trivial)
    assert sigma.restrict([0, 1]).equivalent(trivial.restrict([0, 1]))

    fg = g.Algebra.from_json('{"group": "C2"}')
    m2 = g.Algebra.from_json('{"group": "C2", "subgroup": [0], "k": 2, "theta": [0, 1]}')
    big = g.Algebra.from_json('{"group": "C2", "k": 2, "theta": [0, 0]}')
    assert not fg.embeds_into(m2)[0] and not m2.embeds_into(fg)[0]
    ok, report = fg.embeds_into(big)
    assert ok and json.loads(report)["witness"]["kind"] == "matrix"
    assert fg.is_division_graded() and not m2.is_division_graded()

    fv4 = g.Algebra.from_json('{"group": "C2xC2"}')
    twisted = g.Algebra.from_json(json.dumps({"group": "C2xC2", "cocycle": json.loads(sigma.to_json())}))
    contained, _ = fv4.identities_contained_in(twisted, 2)
    assert not contained

    code, out, _ = g.run(["h2", "--group", "C3xC3"])
    assert code == 0 and json.loads(out)["order"] == 3

    try:
        g.Group("nonsense")
    except ValueError:
        pass
    else:
        raise AssertionError("bad spec accepted")

    print("smoke test passed")


if __name__ == "__main__":
    sys.exit(main())
