import sys
import traceback


class Log(object):
    """Small level-filtered logger that writes messages to stdout or stderr accordingly.

    Library code stays quiet by default (level ERROR); the command line front end lowers the level.
    """

    ERROR = 30
    WARNING = 25
    INFO = 20
    DEBUG = 10
    level = ERROR

    @staticmethod
    def debug(msg, indent=0):
        if Log.level <= Log.DEBUG:
            sys.stdout.write(Log.indent_string(msg, indent) + "\n")

    @staticmethod
    def info(msg, indent=0):
        if Log.level <= Log.INFO:
            sys.stdout.write(Log.indent_string(msg, indent) + "\n")

    @staticmethod
    def warning(msg, indent=0):
        if Log.level <= Log.WARNING:
            sys.stderr.write(Log.indent_string("Warning: " + msg, indent) + "\n")

    @staticmethod
    def error(msg, indent=0):
        sys.stderr.write(Log.indent_string(msg, indent) + "\n")
        if Log.level <= Log.DEBUG:
            traceback.print_exc(5)

    @staticmethod
    def indent_string(string, indent):
        """Adds indentation to a string.

        Args:
            string (str): String to be indented
            indent (int): Number of spaces to indent the string

        Returns:
            str: The indented string.
        """
        if indent > 0:
            return '\n'.join([' ' * indent + l for l in string.splitlines()])
        else:
            return string
