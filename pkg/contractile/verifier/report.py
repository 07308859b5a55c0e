"""
Verification reports
"""

# built-ins
import json

# external packages
import pandas


COLUMNS = ('function', 'status', 'paths', 'chunks_matched', 'residual', 'millis')


class Report:

    """
    Results of one verification run, ordered by function name

    Attributes
    ----------
    bundle : str
        Name of the verified bundle
    results : list of VerificationResult
    """

    def __init__(self, bundle, results):

        self.bundle = bundle
        self.results = sorted(results, key=lambda r: r.function)

    def __iter__(self):
        return iter(self.results)

    def __len__(self):
        return len(self.results)

    def __getitem__(self, function):
        for result in self.results:
            if result.function == function:
                return result
        raise KeyError(function)

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def statuses(self):
        return {r.function: r.status for r in self.results}

    def calls(self):

        """(calls interpreted by contract, calls interpreted by body) over all results"""

        return (sum(r.calls_by_contract for r in self.results),
                sum(r.calls_inlined for r in self.results))

    def records(self, timing=True):
        rows = []
        for r in self.results:
            row = {c: getattr(r, c) for c in COLUMNS}
            if not timing:
                del row['millis']
            rows.append(row)
        return rows

    def to_json(self, timing=True):
        return json.dumps(self.records(timing), indent=2)

    def to_dataframe(self):

        """
        Returns
        -------
        pandas.DataFrame
            One row per function with the columns of the JSON report plus the
            contract/body call counts
        """

        df = pandas.DataFrame(self.records(), columns=list(COLUMNS))
        df['calls_by_contract'] = [r.calls_by_contract for r in self.results]
        df['calls_inlined'] = [r.calls_inlined for r in self.results]
        return df

    def table_rows(self):
        rows = [['Function', 'Status', 'Paths', 'Chunks', 'ms']]
        for r in self.results:
            rows.append([r.function, r.status, r.paths, r.chunks_matched, f"{r.millis:.1f}"])
        return rows
