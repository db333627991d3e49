"""File format round trips: design CSV, JSON sidecars, trace CSV, OA files."""

import numpy as np
import pytest

from lhdopt import RngStream, good_oa_catalog, random_lhd
from lhdopt.cli import main
from lhdopt.errors import LhdError
from lhdopt.io import (
    read_design,
    read_json,
    read_oa,
    sidecar_path,
    write_design,
    write_json,
    write_oa,
    write_trace,
)


class TestDesignCsv:
    def test_round_trip(self, tmp_path):
        X = random_lhd(7, 3, RngStream(4))
        p = write_design(tmp_path / "d.csv", X)
        assert np.array_equal(read_design(p), X)

    def test_lf_newlines_no_header(self, tmp_path):
        p = write_design(tmp_path / "d.csv", np.array([[1, 2], [2, 1]]))
        raw = p.read_bytes()
        assert raw == b"1,2\n2,1\n"

    def test_missing_file(self, tmp_path):
        with pytest.raises(LhdError):
            read_design(tmp_path / "absent.csv")

    def test_non_integer_contents(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("1,a\n2,1\n")
        with pytest.raises(LhdError):
            read_design(p)


class TestJsonSidecar:
    def test_sidecar_path(self):
        assert sidecar_path("out/design.csv").name == "design.json"

    def test_sorted_keys_stable_bytes(self, tmp_path):
        p1 = write_json(tmp_path / "a.json", {"b": 1, "a": 2})
        p2 = write_json(tmp_path / "b.json", {"a": 2, "b": 1})
        assert p1.read_bytes() == p2.read_bytes()
        assert read_json(p1) == {"a": 2, "b": 1}


class TestTraceCsv:
    def test_header_and_rows(self, tmp_path):
        p = write_trace(tmp_path / "t.csv", [(1, 0.5), (10, 0.25)])
        lines = p.read_text().strip().splitlines()
        assert lines[0] == "evaluation_index,best_value"
        assert lines[1] == "1,0.5" and lines[2] == "10,0.25"


class TestOaFiles:
    def test_round_trip(self, tmp_path):
        oa = good_oa_catalog("OA(9,4,3,2)")
        p = write_oa(tmp_path / "oa.csv", oa)
        back = read_oa(p)
        assert np.array_equal(back.cells, oa.cells)
        assert (back.N, back.K, back.s) == (oa.N, oa.K, oa.s)

    def test_sidecar_mismatch(self, tmp_path):
        oa = good_oa_catalog("OA(4,3,2,2)")
        p = write_oa(tmp_path / "oa.csv", oa)
        meta = read_json(sidecar_path(p))
        meta["N"] = 8
        write_json(sidecar_path(p), meta)
        with pytest.raises(LhdError):
            read_oa(p)

    def test_cli_accepts_oa_file_path(self, tmp_path):
        oa = good_oa_catalog("OA(9,4,3,2)")
        oa_file = write_oa(tmp_path / "myoa.csv", oa)
        out = tmp_path / "x.csv"
        assert main(["search", "--alg", "oasa", "--oa", str(oa_file),
                     "--budget", "500", "--seed", "1", "-o", str(out)]) == 0
        assert read_design(out).shape == (9, 4)
        out2 = tmp_path / "y.csv"
        assert main(["generate", "--construction", "oalhd", "--oa", str(oa_file),
                     "--fill", "deterministic", "-o", str(out2)]) == 0
        assert read_design(out2).shape == (9, 4)
