"""Smoke test for the weylkit Python extension."""

import json

import numpy as np

import weylkit


def main() -> None:
    bott = weylkit.ProjectionField.bott(1)
    e = np.array(bott.evaluate([0.3, -0.7]))
    assert e.shape == (2, 2)
    assert np.abs(e @ e - e).max() < 1e-12
    assert max(bott.check_point([1.5, 0.2])) < 1e-12

    e0 = weylkit.ProjectionField.e0(1)
    c_bott = bott.chern_number(256)
    c_e0 = e0.chern_number(256)
    assert c_bott == c_e0 != 0, (c_bott, c_e0)

    sphere = weylkit.ProjectionField.sphere(1)
    s = np.array(sphere.evaluate([0.0, 0.6, 0.8]))
    assert np.abs(s @ s - s).max() < 1e-12

    fam = weylkit.DeformationFamily(1, 1.0, 2.0, 16)
    rel = fam.relations()
    assert rel["idempotent"] < 1e-8 and rel["ab_identity"] < 1e-9, rel
    assert rel["self_adjoint"] > 0.0
    big = np.array(fam.e())
    assert big.shape == (fam.dim, fam.dim)

    distances, slope = weylkit.tau_convergence([1.0, 2.0, 3.0, 4.0])
    assert all(b < a for a, b in zip(distances, distances[1:]))
    assert -2.2 <= slope <= -1.8, slope

    for k in range(-3, 4):
        f = {k: 1.0 + 0.0j}
        assert weylkit.toeplitz_index(f, 64) == -weylkit.winding(f, 64) == -k

    report = json.loads(weylkit.verify(json.dumps({"suites": ["core", "toeplitz"]})))
    assert report["summary"]["failed"] == 0, report["summary"]
    assert set(weylkit.in_scope_anchors()) >= {c["anchor"] for c in report["checks"]}

    try:
        weylkit.DeformationFamily(1, 0.0, 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("lambda = 0 accepted")

    print(
        f"weylkit {weylkit.__version__}: chern = {c_bott}, slope = {slope:.3f}, "
        f"{report['summary']['passed']}/{report['summary']['total']} checks passed"
    )


if __name__ == "__main__":
    main()
