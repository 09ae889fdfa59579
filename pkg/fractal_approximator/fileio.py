import io
import os

from fractal_approximator.log import Log


def read_text(path, encoding='utf8'):
    """Reads the content of a text file.

    Args:
        path (str): The path of the file
        encoding (str): Encoding of the file, 'utf-8-sig' strips a leading byte order mark

    Returns:
        str: The content of the file.

    Raises:
        FileNotFoundError: If the file could not be found under the path
        IOError: If the given path does not contain a file
    """
    if not os.path.exists(path):
        raise FileNotFoundError("File does not exist: '{0}'".format(path))
    if not os.path.isfile(path):
        raise IOError("Is not a file: '{0}'".format(path))

    Log.debug("Loading file '{0}'...".format(path))
    with io.open(path, 'r', encoding=encoding) as f:
        return f.read()


def check_destination(path, force_overwrite=False):
    """Checks that a file may be written to the given path.

    Args:
        path (str): Path where content shall be written to
        force_overwrite (bool): If true an existing file may be overwritten

    Raises:
        IOError: If desired output file exists or is not a file
    """
    if os.path.exists(path):
        if not os.path.isfile(path):
            raise IOError("Destination exists and is not a file: '{0}'".format(path))
        if not force_overwrite:
            raise IOError("Destination already exists. Use '-f' flag to overwrite the file: '{0}'".format(path))


def write_text(content, path, force_overwrite=False):
    """Writes the content into a file with the given path.

    Missing parent directories are created. Newlines are written as '\\n' on every platform, so repeated runs produce
    byte-identical files.

    Args:
        content (str): Content to write into the file
        path (str): Path where the content shall be written to
        force_overwrite (bool): If true any existing file will be overwritten

    Raises:
        IOError: If desired output file exists or is not a file
    """
    check_destination(path, force_overwrite)
    if not os.path.exists(path) and os.path.dirname(path):
        os.makedirs(os.path.dirname(path), exist_ok=True)

    Log.debug("Writing file '{0}'...".format(path))
    with io.open(path, 'w', encoding='utf8', newline='\n') as f:
        f.write(content)


def format_csv(header, rows):
    """Formats rows of already formatted cells as comma separated text.

    Args:
        header (list): Column names
        rows (iterable): Rows, each a sequence of strings

    Returns:
        str: The CSV text, terminated by a newline
    """
    lines = [','.join(header)]
    lines.extend(','.join(row) for row in rows)
    return '\n'.join(lines) + '\n'
