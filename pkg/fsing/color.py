import sys
import logging
import colorama


class Color:
    """Handle colored terminal output using colorama."""

    def __init__(self, stream=None):
        colorama.init(autoreset=True)
        self.stream = stream
        self.WRONG = colorama.Fore.RED
        self.CORRECT = colorama.Fore.GREEN
        self.WARNING = colorama.Fore.YELLOW
        self.DEBUG = colorama.Style.DIM

    def _print(self, text, color):
        print(f"{color}{text}{colorama.Style.RESET_ALL}", file=self.stream or sys.stderr)


class ColorFormatter(logging.Formatter):
    """Log formatter coloring records by level with the Color palette."""

    def __init__(self, fmt="%(levelname)s %(name)s: %(message)s"):
        super().__init__(fmt)
        color = Color()
        self.level_colors = {
            logging.DEBUG: color.DEBUG,
            logging.INFO: color.CORRECT,
            logging.WARNING: color.WARNING,
            logging.ERROR: color.WRONG,
            logging.CRITICAL: color.WRONG,
        }

    def format(self, record):
        text = super().format(record)
        prefix = self.level_colors.get(record.levelno, "")
        return f"{prefix}{text}{colorama.Style.RESET_ALL}"


def setup_logging(level="WARNING"):
    root = logging.getLogger()
    # drop the handler installed by an earlier call
    for handler in list(root.handlers):
        if getattr(handler, "_fsing", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ColorFormatter())
    handler._fsing = True
    root.addHandler(handler)
    root.setLevel(getattr(logging, str(level).upper(), logging.WARNING))
    return root
