
# built-ins
import sys
from abc import ABC, abstractmethod

# internal packages
from . import textformat

# external packages
from tabulate import tabulate


class CliObject(ABC):

    """
    A blueprint of an object that writes command output

    Attributes
    ----------
    name : str
        Name associated with the type of object

    stream : file-like
        Where draw() writes; stdout unless given
    """

    def __init__(self, name, stream=None):

        self.name = name
        self.stream = stream

    def _print(self, text):
        print(text, file=self.stream or sys.stdout)

    @abstractmethod
    def draw(self):
        pass


class Display(CliObject):

    """The Display class is a CliObject that writes one message"""

    def __init__(self, message, format_dict=None, stream=None):

        """
        Parameters
        ----------
        message : str
            A string to be printed on the terminal when object is drawn

        format_dict : dict, default=None
            A dictionary containing parameters to format a string variable utilizing
            the str.format() method
        """

        super().__init__(name='display', stream=stream)

        self.message = message
        self.format_dict = format_dict if format_dict else dict()

    def draw(self):
        self._print(str(self))

    def __str__(self):
        if self.format_dict:
            return self.message.format(**self.format_dict)
        return self.message


class Table(CliObject):

    """
    The Table class is a CliObject that displays rows in a grid

    This is dependent on 'tabulate' python package see here:
    https://pypi.org/project/tabulate/

    Attributes
    ----------
    table_header : str, optional
        String bolded and centered at the top of the table to provide intro to the table

    description : str, optional
        String italicized and left justified at the bottom of the table to provide
        a description of the table

    status_column : int, optional
        Index of a column whose cells are colored as status words
    """

    def __init__(self, table, header=True, stream=None):

        """
        Parameters
        ----------
        table : list
            List within the list will be a row of the table

        header : bool, default=True
            If true, table emphasize the first row as header
        """

        super().__init__(name='table', stream=stream)

        self.table = table
        self.header = header

        self.table_header = ""
        self.description = ""
        self.status_column = None

    def clear(self):

        """Clears the table"""

        if self.header:
            del self.table[1:]
        else:
            self.table.clear()

    def _rows(self):
        if self.status_column is None:
            return self.table
        active = textformat.enabled(self.stream)
        rows = [list(r) for r in self.table]
        for row in rows[1 if self.header else 0:]:
            row[self.status_column] = textformat.status(str(row[self.status_column]), active)
        return rows

    def draw(self):
        table_str = str(self)
        table_length = max(map(len, table_str.split('\n')))
        active = textformat.enabled(self.stream)

        if self.table_header:
            center_header = self.table_header.center(table_length)
            self._print(textformat.apply(center_header, emphases=['bold'], active=active))

        self._print(table_str)

        if self.description:
            ljust_desc = self.description.ljust(table_length)
            self._print(textformat.apply(ljust_desc, emphases=['italic'], active=active))

    def __str__(self):

        """Returns a tabulated string"""

        if self.header:
            return tabulate(self._rows(), headers='firstrow', tablefmt='grid')
        return tabulate(self._rows(), tablefmt='grid')


class Listing(CliObject):

    """Numbered lines, such as a disassembled counterexample, under a bold title"""

    def __init__(self, title, lines, stream=None):

        super().__init__(name='listing', stream=stream)

        self.title = title
        self.lines = list(lines)

    def draw(self):
        self._print(textformat.apply(self.title, emphases=['bold'],
                                     active=textformat.enabled(self.stream)))
        for line in self.lines:
            self._print(f"    {line}")
