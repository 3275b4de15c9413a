"""``python -m polyramsey``."""

from polyramsey.cli import main

if __name__ == "__main__":
    main()
