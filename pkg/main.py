import logging
import shlex
import sys

from app import EXIT_INVALID, LOG_LEVEL
from utils import ToeplitzShell


def main() -> int:

    logging.basicConfig(
        level=LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    shell = ToeplitzShell()
    if len(sys.argv) < 2:
        shell.do_help()
        return EXIT_INVALID

    shell.onecmd(shell.precmd(shlex.join(sys.argv[1:])))
    return shell.status


if __name__ == "__main__":
    sys.exit(main())
