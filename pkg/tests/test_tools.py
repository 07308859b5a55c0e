
# built-ins
import io

# internal packages
from contractile.cli import textformat
from contractile.cli.objects import Display, Listing, Table
from contractile.tools.pandas_extension import export_report, read_report, status_percentage

# external packages
import pandas
import pytest


@pytest.fixture
def report_df():
    return pandas.DataFrame({
        'function': ['exec_load', 'exec_store', 'read_mem', 'fetch'],
        'status': ['Verified', 'Verified', 'Skipped', 'Failed'],
        'paths': [3, 4, 0, 1],
    })


class TestPandasExtension:

    @pytest.mark.parametrize('ext', ['.csv', '.json', '.tsv'])
    def test_export_and_read(self, tmp_path, report_df, ext):
        path = str(tmp_path / f'report{ext}')
        written, message = export_report(report_df, path)
        assert written
        assert "exported" in message
        df, _ = read_report(path)
        assert df['function'].tolist() == report_df['function'].tolist()
        assert df['paths'].tolist() == [3, 4, 0, 1]

    def test_unknown_extension(self, tmp_path, report_df):
        written, message = export_report(report_df, str(tmp_path / 'report.xlsx'))
        assert not written
        assert "'.xlsx'" in message
        df, _ = read_report(str(tmp_path / 'report.xlsx'))
        assert df.empty

    def test_unreadable_file(self, tmp_path):
        df, message = read_report(str(tmp_path / 'missing.csv'))
        assert df.empty
        assert message.startswith("ERROR")

    def test_status_percentage(self, report_df):
        shares = status_percentage(report_df)
        assert shares['Verified'] == 50.0
        assert shares['Failed'] == 25.0
        assert shares.sum() == 100.0

    def test_status_percentage_of_nothing(self):
        assert status_percentage(pandas.DataFrame()).empty


class TestTextFormat:

    def test_inactive(self):
        assert textformat.apply("x", emphases=['bold'], text_color='red', active=False) == "x"

    def test_active(self):
        text = textformat.apply("x", emphases=['bold'], text_color='red', active=True)
        assert text == textformat.TextEmphasis.BOLD + textformat.TextColor.RED + "x" \
            + textformat.TextEmphasis.END

    def test_unknown_palette(self):
        assert textformat.apply("x", emphases=['sparkly'], active=True) == "x"

    def test_status(self):
        assert textformat.status('Verified', active=True).startswith(textformat.TextEmphasis.BOLD)
        assert textformat.status('Verified', active=False) == 'Verified'
        assert textformat.status('Unheard', active=True) == 'Unheard'

    def test_no_color(self, monkeypatch):

        class Terminal(io.StringIO):
            def isatty(self):
                return True

        monkeypatch.delenv('NO_COLOR', raising=False)
        assert textformat.enabled(Terminal())
        assert not textformat.enabled(io.StringIO())
        monkeypatch.setenv('NO_COLOR', '1')
        assert not textformat.enabled(Terminal())


class TestObjects:

    def test_display(self):
        stream = io.StringIO()
        Display("{n} paths", {'n': 3}, stream=stream).draw()
        assert stream.getvalue() == "3 paths\n"

    def test_table(self):
        stream = io.StringIO()
        table = Table([['Function', 'Status'], ['fetch', 'Failed']], stream=stream)
        table.table_header = "Contracts"
        table.description = "Failed 100%"
        table.status_column = 1
        table.draw()
        lines = stream.getvalue().splitlines()
        assert lines[0].strip() == "Contracts"
        assert lines[1].startswith('+')
        assert "| fetch" in stream.getvalue()
        assert lines[-1].strip() == "Failed 100%"

    def test_clear_keeps_header(self):
        table = Table([['Function'], ['a'], ['b']])
        table.clear()
        assert table.table == [['Function']]
        headless = Table([['a'], ['b']], header=False)
        headless.clear()
        assert headless.table == []

    def test_listing(self):
        stream = io.StringIO()
        Listing("counterexample", ["0x0058: 00000013  nop"], stream=stream).draw()
        assert stream.getvalue() == "counterexample\n    0x0058: 00000013  nop\n"
