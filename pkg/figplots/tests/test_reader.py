import pytest

from figplots.reader import CsvFormatError, read_table

GOOD = """# scenario=fig1a
# seed=7
snapshot,CCM-AVF_dB,MVDR_dB
1,1.500000,3.000000
2,2.500000,3.000000
3,2.750000,3.000000
"""


def _write(tmp_path, text, name="t.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_reads_header_columns_and_metadata(tmp_path):
    table = read_table(_write(tmp_path, GOOD))
    assert table.x_name == "snapshot"
    assert table.labels == ["CCM-AVF_dB", "MVDR_dB"]
    assert table.x_values == [1.0, 2.0, 3.0]
    assert table.columns[0] == [1.5, 2.5, 2.75]
    assert table.metadata["scenario"] == "fig1a"
    assert table.metadata["seed"] == "7"


def test_ragged_row_reports_line_number(tmp_path):
    bad = GOOD + "4,9.0\n"
    with pytest.raises(CsvFormatError, match=r"line 7.*expected 3 fields, got 2"):
        read_table(_write(tmp_path, bad))


def test_non_numeric_cell_reports_row_and_column(tmp_path):
    bad = GOOD.replace("2,2.500000,3.000000", "2,oops,3.000000")
    with pytest.raises(CsvFormatError, match=r"line 5, column 2 \(CCM-AVF_dB\).*'oops'"):
        read_table(_write(tmp_path, bad))


def test_empty_and_headerless_files_rejected(tmp_path):
    with pytest.raises(CsvFormatError, match="no header"):
        read_table(_write(tmp_path, "# only=comments\n"))
    with pytest.raises(CsvFormatError, match="no data rows"):
        read_table(_write(tmp_path, "snapshot,A_dB\n"))
    with pytest.raises(CsvFormatError, match="data column"):
        read_table(_write(tmp_path, "snapshot\n1\n"))


def test_missing_file_rejected(tmp_path):
    with pytest.raises(CsvFormatError, match="cannot read"):
        read_table(tmp_path / "missing.csv")
