
# built-ins
import os

# external packages
import pandas


def export_report(df, filepath):

    """
    Writes a report DataFrame to a file chosen by its extension

    See more on pandas.DataFrame at:
    https://pandas.pydata.org/docs/reference/api/pandas.DataFrame.html

    Parameters
    ----------
    df : pandas.DataFrame
        One row per verified function, block or mutant

    filepath : str
        '.json', '.csv' or '.tsv' path on the user's computer

    Returns
    -------
    (bool, str)
        Whether the file was written, and a message saying where or why not
    """

    _, ext = os.path.splitext(filepath)

    try:
        if ext == '.json':
            df.to_json(filepath, orient='records', indent=2)

        elif ext == '.csv':
            df.to_csv(filepath, index=False)

        elif ext == '.tsv':
            df.to_csv(filepath, sep='\t', index=False)

        else:
            return False, f"Report not exported. Extension: '{ext}' not recognized"

        return True, f"Report exported to '{os.path.abspath(filepath)}'"

    except OSError as e:
        return False, f"ERROR: {e}"


def read_report(filepath):

    """
    Reads a report written by export_report

    Returns
    -------
    (pandas.DataFrame, str)
        An empty DataFrame when the file cannot be read
    """

    _, ext = os.path.splitext(filepath)

    try:
        if ext == '.json':
            df = pandas.read_json(filepath, orient='records')

        elif ext == '.csv':
            df = pandas.read_csv(filepath)

        elif ext == '.tsv':
            df = pandas.read_table(filepath)

        else:
            return pandas.DataFrame(), f"Report not imported. Extension: '{ext}' not recognized"

        return df, f"Report imported from '{os.path.basename(filepath)}'"

    except (OSError, ValueError) as e:
        return pandas.DataFrame(), f"ERROR: {e}"


def status_percentage(df, col='status'):

    """
    Share of each status in a report, in percent

    Returns
    -------
    pandas.Series
    """

    if df.empty:
        return pandas.Series(dtype=float)
    return df.groupby(col).size().apply(lambda x: x / len(df) * 100)
