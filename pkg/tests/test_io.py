import json

import numpy as np
import pytest

from superbunch.analysis import FilterConfig, analyze
from superbunch.errors import TraceFormatError
from superbunch.io import read_trace, sidecar_path, write_trace
from superbunch.synth import DelayGrid, full_trace


@pytest.fixture(scope="module")
def trace(spectrum):
    return full_trace(1, spectrum, DelayGrid.for_fringes(-2800.0, 2800.0, 1, spectrum))


def test_roundtrip_is_lossless(tmp_path, trace):
    path = tmp_path / "t.csv"
    side = write_trace(trace, path)
    assert side == sidecar_path(path)
    meta = json.loads(side.read_text())
    assert meta["N"] == 1 and meta["kind"] == "full"
    assert meta["omega0"] == trace.spectrum.omega0
    back = read_trace(path)
    assert np.array_equal(back.values, trace.values)
    assert np.array_equal(back.taus, trace.taus)
    assert back.spectrum == trace.spectrum and back.n == 1


def test_roundtrip_analysis_bitwise(tmp_path, trace):
    path = tmp_path / "t.csv"
    write_trace(trace, path)
    cfg = FilterConfig.default(trace.spectrum)
    assert analyze(read_trace(path), cfg) == analyze(trace, cfg)


def test_mirror_convention_roundtrip(tmp_path, trace):
    path = tmp_path / "m.csv"
    write_trace(trace, path, delay_convention="mirror")
    first = path.read_text().splitlines()[1]
    assert float(first.split(",")[0]) == trace.taus[0] / 2
    assert np.array_equal(read_trace(path).taus, trace.taus)


def test_write_is_deterministic(tmp_path, trace):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_trace(trace, a)
    write_trace(trace, b)
    assert a.read_bytes() == b.read_bytes()
    assert sidecar_path(a).read_bytes() == sidecar_path(b).read_bytes()


def test_headerless_with_comments(tmp_path):
    path = tmp_path / "raw.csv"
    path.write_text("# stage scan\n0.0,1.0\n\n1.0,2.0\n# mid comment\n2.0,3.0\n")
    tr = read_trace(path)
    assert tr.values.tolist() == [1.0, 2.0, 3.0]
    assert tr.spectrum is None and tr.kind == "full"


def test_jitter_is_resampled(tmp_path):
    t = np.arange(11, dtype=float)
    t[5] += 0.005
    path = tmp_path / "j.csv"
    path.write_text("\n".join(f"{a},{2 * a}" for a in t) + "\n")
    tr = read_trace(path)
    np.testing.assert_allclose(tr.values, 2 * np.arange(11), atol=0.02)
    np.testing.assert_allclose(tr.taus, np.arange(11))


def test_large_jitter_rejected(tmp_path):
    t = np.arange(11, dtype=float)
    t[5] += 0.2
    path = tmp_path / "j.csv"
    path.write_text("\n".join(f"{a},{a}" for a in t) + "\n")
    with pytest.raises(TraceFormatError, match="jitter"):
        read_trace(path)


@pytest.mark.parametrize(
    "body, line",
    [
        ("delay_fs,value\n0,1\n1,oops\n", 3),
        ("delay_fs,value\n0,1\n1,2,3\n", 3),
        ("0,1\n1,2\n# ok\nx,y\n", 4),
        ("0,1\n2,2\n1,3\n", 3),
    ],
)
def test_malformed_names_line(tmp_path, body, line):
    path = tmp_path / "bad.csv"
    path.write_text(body)
    with pytest.raises(TraceFormatError) as err:
        read_trace(path)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)
