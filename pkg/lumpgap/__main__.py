# lumpgap/__main__.py
import sys

from .cli import run_cli


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
