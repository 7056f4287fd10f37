"""Smoke test for the symconf_py extension module.

Build and run from the repository root:

    cargo build -p symconf-py --features extension-module --release
    python3 crates/py/python/smoke_test.py target/release

The argument is the cargo output directory holding libsymconf_py.so; the
script copies it to symconf_py.so in a temporary directory and imports it.
"""

import importlib
import os
import shutil
import sys
import tempfile


def load(target_dir):
    for name in ("libsymconf_py.so", "libsymconf_py.dylib", "symconf_py.dll"):
        src = os.path.join(target_dir, name)
        if os.path.exists(src):
            break
    else:
        sys.exit(f"no built library in {target_dir}")
    ext = ".pyd" if src.endswith(".dll") else ".so"
    tmp = tempfile.mkdtemp()
    shutil.copy(src, os.path.join(tmp, "symconf_py" + ext))
    sys.path.insert(0, tmp)
    return importlib.import_module("symconf_py")


def main():
    target = sys.argv[1] if len(sys.argv) > 1 else "target/debug"
    sc = load(target)

    r = sc.Scalar("r")
    assert str(r * r) == "2"
    assert (sc.Scalar("1/2") + sc.Scalar("1/2")) == sc.Scalar("1")
    assert str(sc.Scalar("1") / (sc.Scalar("1") + r)) == "-1+1*r"

    s = sc.Session(2, 1)
    label = s.classify("1,r,0,0,-1", "1,0,0,-r,1")
    assert label == {"iso_u": False, "iso_v": False, "in_span": False}, label

    rep = s.solve([0, 1, 0, 1, 0], [1, 1, 0, 1, 0])
    assert rep["preserving"]["dim"] is None
    assert rep["swapping"]["dim"] == 2

    assert s.check_symmetry(["1/2", "r", "-3"])
    assert str(s.bracket_constant()) == "1"
    assert s.validate_flat_extension()["equivariance"]["passed"]

    assert sc.Session(3, 0).weyl_basis_dim() == 0
    four = sc.Session(4, 0)
    assert four.weyl_basis_dim() == 10
    assert four.prolongation_dim(7) == 0

    cases = sc.reproduce_paper()
    assert [c["case_id"] for c in cases] == [
        "orbit-A", "orbit-B", "orbit-C", "orbit-D", "example-2", "example-3"
    ]
    assert all(c["match"] for c in cases)

    try:
        sc.Session(2, 1).solve("1,1,0,0,0", "0,0,0,0,1")
    except ValueError as e:
        assert "null" in str(e)
    else:
        raise AssertionError("non-null input accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
