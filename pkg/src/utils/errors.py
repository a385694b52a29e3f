# src/utils/errors.py


class WorkbenchError(Exception):
    """Base class for every domain error raised by the workbench."""


class ParseError(WorkbenchError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"
